"""Weighted full Fock space over a countable generator family.

Elements are finitely supported maps from words to complex coefficients;
the word ``z_{i_1} ... z_{i_k}`` indexes the tensor e_{i_1} x ... x e_{i_k}
and the empty word indexes the vacuum.  The level-p norm squares the
coefficients against ``words.weight(w, p, seq)``, so level 0 is the plain
l^2 norm and negative levels give the distribution-side norms.

Creation prepends a one-particle vector letterwise, annihilation strips
the first letter, and ``apply_x`` is their sum, the field operator whose
vacuum distribution is the radius-2 semicircle law.

For a weight gap d with s = sum a_n^{-d} < 1 the tensor product obeys

    norm(f (x) g, -q) <= B_d * norm(f, -p) * norm(g, -q),  q - p = d,

in both orders, with B_d^2 = 1/(1 - s); ``vage_constant`` returns it and
``nuclearity_index`` finds the least admissible d.

Every operator application takes an explicit degree cap (default 12);
coefficient mass discarded by the cap is reported on the result's
``dropped_mass`` attribute, which does not take part in equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import CapExceededError, GapTooSmallError, NotNuclearError
from .words import EMPTY_WORD, WeightSequence, Word, concat, weight

__all__ = [
    "FockElement",
    "DEFAULT_DEGREE_CAP",
    "vacuum",
    "basis_vector",
    "norm",
    "inner",
    "tensor",
    "creation",
    "annihilation",
    "apply_x",
    "VageConstant",
    "vage_constant",
    "nuclearity_index",
    "one_particle_norm",
    "to_json_terms",
    "from_json_terms",
]

DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class FockElement:
    """Immutable sparse vector over words; terms sorted by the word order.

    Coefficients are dropped only when exactly zero.
    """

    terms: tuple[tuple[Word, complex], ...] = ()
    dropped_mass: float = field(default=0.0, compare=False)

    @classmethod
    def from_dict(cls, d: Mapping[Word, complex], dropped_mass: float = 0.0) -> "FockElement":
        items = tuple(
            (w, complex(c)) for w, c in sorted(d.items(), key=lambda kv: kv[0].sort_key())
            if c != 0
        )
        return cls(items, dropped_mass)

    def as_dict(self) -> dict[Word, complex]:
        return dict(self.terms)

    def coeff(self, w: Word) -> complex:
        for word, c in self.terms:
            if word == w:
                return c
        return 0j

    @property
    def degree(self) -> int:
        return max((w.degree for w, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.terms)

    def truncated(self, cap: int | None) -> "FockElement":
        if cap is None:
            return self
        kept = {w: c for w, c in self.terms if w.degree <= cap}
        lost = sum(abs(c) ** 2 for w, c in self.terms if w.degree > cap)
        return FockElement.from_dict(kept, dropped_mass=self.dropped_mass + lost)

    def __add__(self, other: "FockElement") -> "FockElement":
        d = self.as_dict()
        for w, c in other.terms:
            d[w] = d.get(w, 0j) + c
        return FockElement.from_dict(d)

    def __sub__(self, other: "FockElement") -> "FockElement":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "FockElement":
        return FockElement.from_dict({w: scalar * c for w, c in self.terms})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c:.6g})*{w}" for w, c in self.terms)


def vacuum() -> FockElement:
    return FockElement(((EMPTY_WORD, 1.0 + 0j),))


def basis_vector(w: Word) -> FockElement:
    return FockElement(((w, 1.0 + 0j),))


def norm(f: FockElement, level: float = 0.0, seq: WeightSequence = WeightSequence.linear()) -> float:
    """Level-p norm: sqrt(sum |f_w|^2 weight(w, p)).

    The distribution-side product inequality reads
    norm(f (x) g, -q) <= B * norm(f, -p) * norm(g, -q).
    """
    acc = 0.0
    for w, c in f.terms:
        acc += abs(c) ** 2 * weight(w, level, seq)
    return math.sqrt(acc)


def inner(f: FockElement, g: FockElement, level: float = 0.0,
          seq: WeightSequence = WeightSequence.linear()) -> complex:
    """Sesquilinear pairing, conjugate-linear in the first slot."""
    gd = g.as_dict()
    acc = 0j
    for w, c in f.terms:
        other = gd.get(w)
        if other is not None:
            acc += c.conjugate() * other * weight(w, level, seq)
    return acc


def tensor(f: FockElement, g: FockElement, cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    """Concatenation product; distinct support pairs can land on one word."""
    out: dict[Word, complex] = {}
    lost = 0.0
    for wf, cf in f.terms:
        for wg, cg in g.terms:
            w = concat(wf, wg)
            if cap is not None and w.degree > cap:
                lost += abs(cf * cg) ** 2
                continue
            out[w] = out.get(w, 0j) + cf * cg
    return FockElement.from_dict(out, dropped_mass=lost)


def _letter_items(coeffs) -> list[tuple[int, complex]]:
    if isinstance(coeffs, Mapping):
        return [(int(i), complex(c)) for i, c in coeffs.items() if c != 0]
    return [(i, complex(c)) for i, c in enumerate(coeffs) if c != 0]


def creation(coeffs, u: FockElement, cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    """Creation by the one-particle vector sum_i coeffs[i] e_i."""
    items = _letter_items(coeffs)
    out: dict[Word, complex] = {}
    lost = 0.0
    for w, c in u.terms:
        if cap is not None and w.degree + 1 > cap:
            lost += abs(c) ** 2 * sum(abs(ci) ** 2 for _, ci in items)
            continue
        for i, ci in items:
            nw = w.prepend_letter(i)
            out[nw] = out.get(nw, 0j) + ci * c
    return FockElement.from_dict(out, dropped_mass=lost)


def annihilation(coeffs, u: FockElement) -> FockElement:
    """Adjoint of creation: strips the first letter, kills the vacuum."""
    items = dict(_letter_items(coeffs))
    out: dict[Word, complex] = {}
    for w, c in u.terms:
        if w.is_empty():
            continue
        letter, rest = w.drop_first_letter()
        ci = items.get(letter)
        if ci is None:
            continue
        out[rest] = out.get(rest, 0j) + ci.conjugate() * c
    return FockElement.from_dict(out)


def apply_x(coeffs, u: FockElement, cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    """Field operator: creation plus annihilation for the same vector."""
    created = creation(coeffs, u, cap)
    killed = annihilation(coeffs, u)
    total = created + killed
    return FockElement(total.terms, dropped_mass=created.dropped_mass)


def one_particle_norm(coeffs, level: float = 0.0,
                      seq: WeightSequence = WeightSequence.linear()) -> float:
    """Norm of sum_i coeffs[i] e_i, letter i weighted by a_{i+1}**level."""
    acc = 0.0
    for i, c in _letter_items(coeffs):
        acc += abs(c) ** 2 * seq.value(i + 1) ** level
    return math.sqrt(acc)


class VageConstant(NamedTuple):
    b: float
    b_squared: float


def vage_constant(d: float, seq: WeightSequence = WeightSequence.linear()) -> VageConstant:
    """Product-bound constant at gap d: B^2 = 1 / (1 - sum a_n^{-d}).

    Raises GapTooSmallError when the inverse-power sum is not below one.
    """
    s = seq.inverse_power_sum(d)
    if not s < 1.0:
        raise GapTooSmallError(
            f"inverse power sum at gap {d} is {s:g}, need strictly below 1"
        )
    b2 = 1.0 / (1.0 - s)
    return VageConstant(math.sqrt(b2), b2)


def nuclearity_index(seq: WeightSequence, max_gap: int = 64) -> int:
    """Least integer d >= 1 with sum a_n^{-d} < 1; both stock sequences give 2."""
    for d in range(1, max_gap + 1):
        if seq.inverse_power_sum(d) < 1.0:
            return d
    raise NotNuclearError(f"no admissible gap up to {max_gap}")


def require_cap(expression_degree: int, cap: int | None) -> None:
    """Guard used by trace evaluations that must not truncate silently."""
    if cap is not None and expression_degree > cap:
        raise CapExceededError(
            f"expression degree {expression_degree} exceeds cap {cap}"
        )


def to_json_terms(f: FockElement) -> list[dict]:
    """JSON-friendly term list: word text plus real and imaginary parts."""
    return [
        {"word": str(w), "re": c.real, "im": c.imag}
        for w, c in f.terms
    ]


def from_json_terms(items: Iterable[Mapping]) -> FockElement:
    from .words import parse_word

    d: dict[Word, complex] = {}
    for item in items:
        w = parse_word(item["word"])
        d[w] = d.get(w, 0j) + complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
    return FockElement.from_dict(d)
