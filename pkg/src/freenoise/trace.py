"""Trace of the free semicircular family, by three independent routes.

Generators are the field operators X_i on the full Fock space; the trace
is the vacuum state.  A word alpha = z_{i_1}^{a_1} ... z_{i_k}^{a_k}
with adjacent letters distinct labels the basis element

    U_alpha = p_{a_1}(X_{i_1}) ... p_{a_k}(X_{i_k}),

where p_n(x) = U_n(x/2) is the radius-2 orthonormal Chebyshev family.
These are orthonormal for the trace pairing; the recursive engine proves
it case by case, the Fock engine checks it by applying operators to the
vacuum, and the pairing engine counts non-crossing matchings.

Engines:

* ``trace_reduction(beta, alpha)`` evaluates tau(U_beta^* U_alpha)
  exactly by induction on the degree of beta.
* ``trace_pairings(letters)`` evaluates tau(X_{i_1} ... X_{i_k}) as the
  number of letter-matched non-crossing pair partitions, times
  (radius/2)^2 per pair.
* ``trace_fock(...)`` applies an operator polynomial to the vacuum and
  reads off the vacuum coefficient, in floating point.
* ``trace_monomial_reduction(letters)`` expands the monomial in the
  U-word basis through the product linearization and reads the constant
  coefficient, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import fock
from .chebyshev import linearize, orthonormal_poly
from .errors import CapExceededError
from .fock import DEFAULT_DEGREE_CAP, FockElement, apply_x, basis_vector, vacuum
from .words import EMPTY_WORD, Word, normalize

__all__ = [
    "UWord",
    "TraceResult",
    "trace_reduction",
    "trace_pairings",
    "u_mult",
    "monomial_to_uwords",
    "trace_monomial_reduction",
    "apply_monomial",
    "apply_operator_polynomial",
    "trace_fock",
    "wick_word_vector",
    "trace_uword_fock",
    "trace_monomial_all",
]

# A U-word is an ordinary normal-form word read as the label of U_alpha.
UWord = Word


@dataclass(frozen=True)
class TraceResult:
    engine: str
    value: Fraction | float


@lru_cache(maxsize=None)
def trace_reduction(beta: Word, alpha: Word) -> Fraction:
    """tau(U_beta^* U_alpha) = delta_{beta,alpha}, by induction on |beta|.

    Base case: an alternating product of trace-zero factors has trace
    zero by freeness, so tau(U_alpha) = delta_{alpha,1}.  When the lead
    letters differ the product is alternating and centered, giving zero.
    When they agree the adjacent Chebyshev factors linearize into a sum
    over degrees |a-b|+2k; the degree-zero term continues the recursion
    and, for distinct exponents, never appears.
    """
    if beta.is_empty():
        return Fraction(1 if alpha.is_empty() else 0)
    if alpha.is_empty():
        # tau(U_beta^*) is the conjugate of tau(U_beta), zero by the base case
        return Fraction(0)
    (j, b), beta_rest = beta.split_first_run()
    (i, a), alpha_rest = alpha.split_first_run()
    if i != j:
        return Fraction(0)
    total = Fraction(0)
    for deg in linearize(b, a).degrees:
        if deg == 0:
            new_alpha = alpha_rest
        else:
            new_alpha = Word(((i, deg),) + alpha_rest.runs)
        total += trace_reduction(beta_rest, new_alpha)
    return total


@lru_cache(maxsize=None)
def _noncrossing_matched(letters: tuple[int, ...]) -> int:
    """Number of non-crossing pair partitions matching equal letters."""
    if not letters:
        return 1
    if len(letters) % 2 == 1:
        return 0
    first = letters[0]
    count = 0
    for j in range(1, len(letters), 2):
        if letters[j] == first:
            count += _noncrossing_matched(letters[1:j]) * _noncrossing_matched(letters[j + 1:])
    return count


def trace_pairings(letters: Sequence[int], radius: Fraction | int = 2) -> Fraction:
    """tau(X_{i_1} ... X_{i_k}) by the free Wick rule.

    Each pairing contributes (radius/2)^2 per pair; at the default
    radius 2 the value is the plain matched non-crossing count.
    """
    letters = tuple(int(x) for x in letters)
    count = _noncrossing_matched(letters)
    if count == 0:
        return Fraction(0)
    pair_weight = (Fraction(radius) / 2) ** len(letters)
    return count * pair_weight


@lru_cache(maxsize=None)
def u_mult(a: Word, b: Word) -> tuple[tuple[Word, Fraction], ...]:
    """Product U_a U_b expanded over U-words, exact.

    Concatenation except at the boundary: equal boundary letters
    linearize, and a degree-zero middle term can make the neighbours
    touch, which resolves recursively.
    """
    if a.is_empty():
        return ((b, Fraction(1)),)
    if b.is_empty():
        return ((a, Fraction(1)),)
    a_head, (la, ea) = a.split_last_run()
    (lb, eb), b_tail = b.split_first_run()
    if la != lb:
        return ((Word(a.runs + b.runs), Fraction(1)),)
    out: dict[Word, Fraction] = {}
    for deg in linearize(ea, eb).degrees:
        if deg == 0:
            for w, c in u_mult(a_head, b_tail):
                out[w] = out.get(w, Fraction(0)) + c
        else:
            w = Word(a_head.runs + ((la, deg),) + b_tail.runs)
            out[w] = out.get(w, Fraction(0)) + 1
    return tuple(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def monomial_to_uwords(letters: Sequence[int]) -> dict[Word, Fraction]:
    """Expansion of X_{i_1} ... X_{i_k} in the U-word basis, exact."""
    acc: dict[Word, Fraction] = {EMPTY_WORD: Fraction(1)}
    for letter in letters:
        step = Word(((int(letter), 1),))
        nxt: dict[Word, Fraction] = {}
        for w, c in acc.items():
            for prod, pc in u_mult(w, step):
                nxt[prod] = nxt.get(prod, Fraction(0)) + c * pc
        acc = {w: c for w, c in nxt.items() if c != 0}
    return acc


def trace_monomial_reduction(letters: Sequence[int]) -> Fraction:
    """Constant coefficient of the U-word expansion of the monomial."""
    return monomial_to_uwords(letters).get(EMPTY_WORD, Fraction(0))


# Operator polynomials: mapping from letter tuples to coefficients,
# the tuple (i_1, ..., i_k) standing for X_{i_1} ... X_{i_k}.
OperatorPolynomial = Mapping[tuple[int, ...], complex]


def apply_monomial(letters: Sequence[int], vec: FockElement,
                   cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    """X_{i_1} ... X_{i_k} applied to vec, rightmost factor first."""
    out = vec
    for letter in reversed(tuple(letters)):
        out = apply_x({int(letter): 1.0}, out, cap)
    return out


def apply_operator_polynomial(expr: OperatorPolynomial, vec: FockElement,
                              cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    total = FockElement()
    for letters, c in expr.items():
        if c == 0:
            continue
        total = total + complex(c) * apply_monomial(letters, vec, cap)
    return total


def trace_fock(expr: OperatorPolynomial | Sequence[int],
               cap: int | None = DEFAULT_DEGREE_CAP) -> float:
    """Vacuum coefficient of the expression applied to the vacuum.

    Intermediate degrees stay below the expression degree, so the result
    is exact up to rounding once the cap admits it; a too-small cap
    raises instead of silently truncating.
    """
    if not isinstance(expr, Mapping):
        expr = {tuple(int(x) for x in expr): 1.0}
    top = max((len(letters) for letters in expr), default=0)
    fock.require_cap(top, cap)
    result = apply_operator_polynomial(expr, vacuum(), cap)
    value = result.coeff(EMPTY_WORD)
    return float(value.real)


def _poly_powers(letter: int, top_power: int, vec: FockElement,
                 cap: int | None) -> list[FockElement]:
    powers = [vec]
    for _ in range(top_power):
        powers.append(apply_x({letter: 1.0}, powers[-1], cap))
    return powers


def wick_word_vector(alpha: Word, cap: int | None = DEFAULT_DEGREE_CAP) -> FockElement:
    """U_alpha applied to the vacuum; equals the basis vector e_alpha.

    Runs are applied right to left, each as the radius-2 Chebyshev
    polynomial of the matching field operator.
    """
    if cap is not None and alpha.degree > cap:
        raise CapExceededError(f"word degree {alpha.degree} exceeds cap {cap}")
    vec = vacuum()
    for letter, exp in reversed(alpha.runs):
        powers = _poly_powers(letter, exp, vec, cap)
        combo = FockElement()
        for j, c in enumerate(orthonormal_poly(exp, 2)):
            if c != 0:
                combo = combo + complex(Fraction(c)) * powers[j]
        vec = combo
    return vec


def trace_uword_fock(beta: Word, alpha: Word,
                     cap: int | None = DEFAULT_DEGREE_CAP) -> float:
    """tau(U_beta^* U_alpha) as the Fock pairing of the two vacuum vectors."""
    vb = wick_word_vector(beta, cap)
    va = wick_word_vector(alpha, cap)
    return float(fock.inner(vb, va).real)


def trace_monomial_all(word_or_letters, cap: int | None = DEFAULT_DEGREE_CAP,
                       radius: Fraction | int = 2) -> list[TraceResult]:
    """All three engines on one monomial; exact engines return Fractions."""
    if isinstance(word_or_letters, Word):
        letters = word_or_letters.letters()
    else:
        letters = normalize(word_or_letters).letters()
    return [
        TraceResult("reduction", trace_monomial_reduction(letters)),
        TraceResult("pairing", trace_pairings(letters, radius)),
        TraceResult("fock", trace_fock(letters, cap)),
    ]
