"""Chebyshev polynomials of the second kind and the semicircle law.

U_n satisfies U_0 = 1, U_1 = 2x, U_{n+1} = 2x U_n - U_{n-1} and is
orthonormal for the weight (2/pi) sqrt(1 - x^2) on [-1, 1].  For the
semicircle law of radius r the orthonormal family is p_n(x) = U_n(x/r);
the default operator convention in this package is radius 2, where the
p_n are monic with integer coefficients (p_2 = x^2 - 1, p_3 = x^3 - 2x).

The product rule U_m U_n = sum_{k=0}^{min(m,n)} U_{|m-n|+2k} has all
coefficients equal to one; ``linearize`` returns it exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError

__all__ = [
    "ChebPoly",
    "SemicircleLaw",
    "u_poly",
    "orthonormal_poly",
    "eval_u",
    "linearize",
    "poly_mul",
    "cheb_to_monomial",
    "orthonormal_check",
    "semicircle_moment",
    "catalan",
]


@dataclass(frozen=True)
class ChebPoly:
    """Finite combination of U_n with exact rational coefficients."""

    coeffs: tuple[tuple[int, Fraction], ...]  # (degree, coefficient), sorted

    @classmethod
    def from_dict(cls, d: Mapping[int, Fraction]) -> "ChebPoly":
        items = tuple(sorted((int(n), Fraction(c)) for n, c in d.items() if c != 0))
        return cls(items)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.coeffs)

    def __add__(self, other: "ChebPoly") -> "ChebPoly":
        d = self.as_dict()
        for n, c in other.coeffs:
            d[n] = d.get(n, Fraction(0)) + c
        return ChebPoly.from_dict(d)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def u_poly(n: int) -> tuple[Fraction, ...]:
    """Monomial coefficients of U_n, low degree first, exact."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return (Fraction(1),)
    if n == 1:
        return (Fraction(0), Fraction(2))
    prev2 = u_poly(n - 2)
    prev1 = u_poly(n - 1)
    out = [Fraction(0)] * (n + 1)
    for j, c in enumerate(prev1):
        out[j + 1] += 2 * c
    for j, c in enumerate(prev2):
        out[j] -= c
    return tuple(out)


def orthonormal_poly(n: int, radius: Fraction | int = 2) -> tuple[Fraction, ...]:
    """Coefficients of p_n(x) = U_n(x / radius), exact for rational radius."""
    r = Fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    return tuple(c / r ** j for j, c in enumerate(u_poly(n)))


def eval_u(n: int, y):
    """U_n(y) by the three-term recurrence; accepts scalars or arrays."""
    y = np.asarray(y, dtype=float)
    prev = np.ones_like(y)
    if n == 0:
        return prev
    cur = 2.0 * y
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * y * cur - prev
    return cur


def linearize(m: int, n: int) -> ChebPoly:
    """Product expansion U_m U_n = sum over |m-n|+2k, k = 0..min(m,n)."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be non-negative")
    lo = abs(m - n)
    return ChebPoly.from_dict({lo + 2 * k: Fraction(1) for k in range(min(m, n) + 1)})


def poly_mul(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def cheb_to_monomial(p: ChebPoly) -> tuple[Fraction, ...]:
    """Expand a U-combination in the monomial basis, exactly."""
    if not p.coeffs:
        return (Fraction(0),)
    top = max(n for n, _ in p.coeffs)
    out = [Fraction(0)] * (top + 1)
    for n, c in p.coeffs:
        for j, u in enumerate(u_poly(n)):
            out[j] += c * u
    return tuple(out)


@dataclass(frozen=True)
class SemicircleLaw:
    """Semicircle law of the given radius, density (2/(pi r^2)) sqrt(r^2 - x^2)."""

    radius: Fraction | int | float = 2

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def density(self, x):
        r = float(self.radius)
        x = np.asarray(x, dtype=float)
        inside = np.clip(r * r - x * x, 0.0, None)
        return 2.0 / (math.pi * r * r) * np.sqrt(inside)


def semicircle_moment(k: int, law: SemicircleLaw = SemicircleLaw()) -> Fraction:
    """k-th moment, exact: odd moments vanish, moment 2n is C_n (r/2)^{2n}."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    if k % 2 == 1:
        return Fraction(0)
    n = k // 2
    half = Fraction(law.radius) / 2
    return catalan(n) * half ** (2 * n)


def orthonormal_check(
    m: int,
    n: int,
    law: SemicircleLaw = SemicircleLaw(),
    tol: float = 1e-12,
) -> float:
    """Adaptive quadrature of integral p_m p_n d(law); near delta_{mn}.

    Raises QuadratureError when the quadrature error estimate exceeds tol.
    """
    r = float(law.radius)

    def integrand(x):
        y = x / r
        return float(eval_u(m, y) * eval_u(n, y)) * float(law.density(x))

    val, err = quad(integrand, -r, r, epsabs=tol * 0.1, epsrel=1e-13, limit=400)
    if err > tol:
        raise QuadratureError(
            f"orthonormality quadrature for ({m},{n}) reached error {err:g} > tol {tol:g}"
        )
    return val
