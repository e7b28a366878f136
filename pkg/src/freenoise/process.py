"""The stationary-increment free process, its white-noise derivative,
and Riemann-sum stochastic integration.

A density and a Hermite truncation define the process operator at time
t as the field operator of the one-particle vector with coefficient
vector alpha(t), the letter i carrying the Hermite index i + 1.  Its
time derivative uses the multiplier values instead.  The stochastic
integral of an operator-valued path Y against the white noise is the
limit of left-tagged dyadic Riemann sums

    sum_j Y(u_j) (x) (W(u_j) f) * delta,

measured in a weighted norm two levels above the state's own, where
the tensor-product inequality controls each term.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import fock, spectral
from .errors import LevelTooLowError, NonCauchyError, UncertifiedError, ValidationError
from .fock import DEFAULT_DEGREE_CAP, FockElement, vacuum
from .spectral import SpectralDensity, TailReport
from .words import EMPTY_WORD, WeightSequence

__all__ = [
    "ProcessState",
    "IntegrandPath",
    "IntegralResult",
    "apply_process",
    "apply_whitenoise",
    "covariance",
    "riemann_sum",
    "stochastic_integral",
]

# reference time for the per-state tail certificate; the class growth
# templates are uniform in t, so one certificate stands for the state
_CERT_TIME = 1.0


@dataclass(frozen=True)
class ProcessState:
    """Density plus the truncation and weight bookkeeping for one process.

    level is the weight exponent p of the distribution-space norm the
    process lives at; a polynomial-class density needs p at least its
    class index plus 3, which is also what the tail certificate checks.
    """

    density: SpectralDensity
    n_max: int = 200
    degree_cap: int | None = DEFAULT_DEGREE_CAP
    level: int | None = None
    seq: WeightSequence = field(default_factory=WeightSequence.linear)

    def __post_init__(self):
        if self.n_max < 16:
            raise ValidationError("need a Hermite truncation of at least 16")
        if self.level is None:
            object.__setattr__(self, "level", self.density.class_index + 3)
        if self.density.growth == "polynomial" and \
                self.level < self.density.class_index + 3:
            raise LevelTooLowError(
                f"weight level {self.level} below the regularity threshold "
                f"{self.density.class_index + 3} for this density")

    def certificate(self) -> TailReport:
        return _certificate(self.density, self.level, self.n_max, self.seq)


@lru_cache(maxsize=64)
def _certificate(dens: SpectralDensity, level: int, n_max: int,
                 seq: WeightSequence) -> TailReport:
    return spectral.certify_tail(dens, level, _CERT_TIME, n_max=n_max, seq=seq)


def _require_certified(state: ProcessState) -> None:
    report = state.certificate()
    if not report.certified:
        raise UncertifiedError(
            f"truncation at {state.n_max} not certified at level "
            f"{state.level}: {report.detail}")


def apply_process(state: ProcessState, t: float, f: FockElement) -> FockElement:
    """Process operator at time t applied to f; zero at t = 0."""
    _require_certified(state)
    if t == 0.0:
        return FockElement()
    coeffs = spectral.alpha_vector(state.density, t, state.n_max)
    return fock.apply_x(coeffs, f, state.degree_cap)


def apply_whitenoise(state: ProcessState, t: float, f: FockElement) -> FockElement:
    """White-noise derivative at time t applied to f."""
    _require_certified(state)
    coeffs = spectral.tm_values(state.density, t, state.n_max)
    return fock.apply_x(coeffs, f, state.degree_cap)


def covariance(state: ProcessState, s: float, t: float) -> float:
    """Trace of the adjoint pair, computed through the operators.

    Equals the covariance kernel up to the truncation tail; both
    process vectors are built on the vacuum and paired.
    """
    vs = apply_process(state, s, vacuum())
    vt = apply_process(state, t, vacuum())
    return float(fock.inner(vs, vt).real)


@dataclass(frozen=True)
class IntegrandPath:
    """Operator-integrand samples Y(t_i) on a strictly increasing grid."""

    times: tuple[float, ...]
    values: tuple[FockElement, ...]

    def __post_init__(self):
        if len(self.times) != len(self.values) or not self.times:
            raise ValidationError("need matching, nonempty times and values")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValidationError("sample times must be strictly increasing")

    @classmethod
    def dyadic(cls, fn: Callable[[float], FockElement], a: float, b: float,
               levels: int) -> "IntegrandPath":
        """Sample fn at the left tags of the finest dyadic partition.

        Coarser dyadic partitions of [a, b] use subsets of these tags,
        so one sampled path serves every refinement level up to levels.
        """
        if not b > a:
            raise ValidationError("need b > a")
        n = 1 << levels
        step = (b - a) / n
        times = tuple(a + j * step for j in range(n))
        return cls(times, tuple(fn(t) for t in times))

    def value_at(self, t: float) -> FockElement:
        k = bisect.bisect_left(self.times, t - 1e-12)
        if k < len(self.times) and abs(self.times[k] - t) <= 1e-9:
            return self.values[k]
        raise ValidationError(f"path not sampled at t = {t!r}")


@dataclass(frozen=True)
class IntegralResult:
    """Finest Riemann sum plus the refinement diagnostics.

    extrapolated removes the leading 1/n error term from the last two
    sums; once convergence is declared at first order it is the best
    available estimate of the limit.
    """
    value: FockElement
    extrapolated: FockElement
    distances: tuple[float, ...]
    ratios: tuple[float, ...]
    converged: bool
    levels: int
    level_p: int
    level_q: int


def riemann_sum(state: ProcessState, path: IntegrandPath, f: FockElement,
                a: float, b: float, n_intervals: int) -> FockElement:
    """Left-tagged Riemann sum with n_intervals equal pieces.

    Terms are accumulated left to right in a fixed order, so repeated
    runs reduce identically.
    """
    if n_intervals < 1:
        raise ValidationError("need at least one interval")
    step = (b - a) / n_intervals
    total = FockElement()
    for j in range(n_intervals):
        u = a + j * step
        term = fock.tensor(path.value_at(u), apply_whitenoise(state, u, f),
                           state.degree_cap)
        total = total + step * term
    return total


def stochastic_integral(state: ProcessState, path: IntegrandPath,
                        f: FockElement, a: float, b: float, levels: int,
                        q: int | None = None) -> IntegralResult:
    """Dyadic-refinement stochastic integral over [a, b].

    Successive Riemann sums at 1, 2, 4, ... 2^levels intervals are
    compared in the level -q norm; convergence is declared once three
    consecutive distances each drop to at most 0.6 of the previous one.
    Distances that grow beyond rounding noise abort instead.
    """
    if levels < 3:
        raise ValidationError("need at least 3 refinement levels")
    p = state.level
    if q is None:
        q = p + 2
    if q < p + 2:
        raise LevelTooLowError(
            f"pairing level {q} below the product-bound threshold {p + 2}")

    sums = [riemann_sum(state, path, f, a, b, 1 << k)
            for k in range(levels + 1)]
    distances = tuple(
        fock.norm(s1 - s0, -float(q), state.seq)
        for s0, s1 in zip(sums, sums[1:]))
    scale = max(fock.norm(sums[-1], -float(q), state.seq), 1.0)
    floor = 1e-14 * scale
    ratios = tuple(
        0.0 if d1 <= floor else (math.inf if d0 <= floor else d1 / d0)
        for d0, d1 in zip(distances, distances[1:]))
    for d0, d1 in zip(distances, distances[1:]):
        if d1 > d0 * (1.0 + 1e-9) and d1 > floor:
            raise NonCauchyError(
                f"refinement distance grew from {d0:.3e} to {d1:.3e}")
    converged = (len(ratios) >= 3 and all(r <= 0.6 for r in ratios[-3:])) \
        or all(d <= floor for d in distances)
    extrapolated = 2.0 * sums[-1] + (-1.0) * sums[-2]
    return IntegralResult(value=sums[-1], extrapolated=extrapolated,
                          distances=distances, ratios=ratios,
                          converged=bool(converged), levels=levels,
                          level_p=p, level_q=q)
