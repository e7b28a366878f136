"""Random-matrix Monte Carlo oracle for the trace engines.

Independent unitary-ensemble matrices of growing size behave like a
free semicircular family: normalized traces of words in them converge
to the non-crossing pairing counts.  This module samples such families
reproducibly and estimates traces with standard errors, giving an
asymptotic cross-check that is independent of every exact engine.

Sampling is deterministic per (seed, sample index, generator index)
through counter-based Philox streams, and Gaussians come from an
explicit Box-Muller transform of the uniform stream:

    z1 = sqrt(-2 ln u1) cos(2 pi u2),  z2 = sqrt(-2 ln u1) sin(2 pi u2),

with u1 flipped to (0, 1] so the log is finite.  A Hermitian sample is
H = (A + A*)/2 with A filled by independent standard complex normals,
so off-diagonal entries have unit second moment and the spectrum of
H/sqrt(dim) fills the radius-2 semicircle; the configured radius
rescales that support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ValidationError
from .parallel import ordered_map, thread_count
from .words import Word

__all__ = [
    "EnsembleConfig",
    "TraceEstimate",
    "gue_matrix",
    "sample_generators",
    "estimate_trace",
    "estimate_trace_many",
    "estimate_trace_uword",
]


@dataclass(frozen=True)
class EnsembleConfig:
    dim: int = 1000
    n_generators: int = 2
    n_samples: int = 50
    seed: int = 0
    radius: float = 2.0
    max_word_len: int = 12

    def __post_init__(self):
        if self.dim < 2:
            raise ValidationError("matrix dimension must be >= 2")
        if self.n_generators < 1 or self.n_samples < 1:
            raise ValidationError("need at least one generator and one sample")
        if self.radius <= 0:
            raise ValidationError("radius must be positive")


class TraceEstimate(NamedTuple):
    mean: float
    se: float


def _stream(seed: int, sample: int, gen_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(sample, gen_index))
    return np.random.Generator(np.random.Philox(ss))


def _standard_normals(rng: np.random.Generator, count: int) -> np.ndarray:
    half = (count + 1) // 2
    u1 = 1.0 - rng.random(half)
    u2 = rng.random(half)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * math.pi * u2
    return np.concatenate([radius * np.cos(angle),
                           radius * np.sin(angle)])[:count]


def gue_matrix(cfg: EnsembleConfig, sample: int, gen_index: int) -> np.ndarray:
    rng = _stream(cfg.seed, sample, gen_index)
    d = cfg.dim
    re = _standard_normals(rng, d * d).reshape(d, d)
    im = _standard_normals(rng, d * d).reshape(d, d)
    a = re + 1j * im
    h = 0.5 * (a + a.conj().T)
    return (cfg.radius / 2.0) * h / math.sqrt(d)


def sample_generators(cfg: EnsembleConfig, sample: int) -> list[np.ndarray]:
    return [gue_matrix(cfg, sample, g) for g in range(cfg.n_generators)]


def _check_word(cfg: EnsembleConfig, letters: tuple[int, ...]) -> None:
    if len(letters) > cfg.max_word_len:
        raise ValidationError(
            f"word length {len(letters)} exceeds cap {cfg.max_word_len}")
    for i in letters:
        if not 0 <= i < cfg.n_generators:
            raise ValidationError(f"letter {i} outside the generator range")


def _prefix_closure(halves: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Every prefix of length two or more, parents before children."""
    need = {t[:k] for t in halves for k in range(2, len(t) + 1)}
    return sorted(need, key=lambda t: (len(t), t))


def _half_products(mats: Sequence[np.ndarray],
                   halves: set[tuple[int, ...]],
                   pool: Sequence[np.ndarray] | None = None,
                   ) -> dict[tuple[int, ...], np.ndarray]:
    """Matrix products for every requested prefix, built by prefix reuse.

    A pool of one buffer per prefix-closure entry keeps the sampling
    loop free of large allocations; repeated fresh outputs here grow
    the resident set without bound on glibc.  Single letters alias the
    input matrices and are never written.
    """
    memo: dict[tuple[int, ...], np.ndarray] = {
        (i,): m for i, m in enumerate(mats)}
    for k, t in enumerate(_prefix_closure(halves)):
        out = None if pool is None else pool[k]
        memo[t] = np.matmul(memo[t[:-1]], mats[t[-1]], out=out)
    return memo


def _sample_slices(cfg: EnsembleConfig) -> list[range]:
    """Contiguous sample ranges, one per worker thread."""
    n_workers = max(1, min(thread_count(), cfg.n_samples))
    step = cfg.n_samples / n_workers
    bounds = [round(i * step) for i in range(n_workers + 1)]
    return [range(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def estimate_trace_many(cfg: EnsembleConfig,
                        words: Sequence[Sequence[int]]) -> list[TraceEstimate]:
    """Monte Carlo traces of many words over shared sample matrices.

    Each word is split in half so only products of half length are ever
    multiplied; the closing trace tr(L R) contracts entrywise, sum_ij
    L_ij R_ji, quadratic instead of cubic in the dimension.  All words
    of one call see the same matrices, so estimates are correlated
    across words but each is unbiased, and the result is deterministic
    in the seed alone: sample streams are counter-based, so the worker
    count never changes a digit.
    """
    tuples = [tuple(int(i) for i in w) for w in words]
    for t in tuples:
        _check_word(cfg, t)
    halves: set[tuple[int, ...]] = set()
    for t in tuples:
        mid = (len(t) + 1) // 2
        halves.add(t[:mid])
        halves.add(t[mid:])
    pool_size = len(_prefix_closure(halves))

    def run_slice(samples: range) -> np.ndarray:
        pool = [np.empty((cfg.dim, cfg.dim), np.complex128)
                for _ in range(pool_size)]
        rows = np.empty((len(samples), len(tuples)))
        for row, sample in enumerate(samples):
            mats = sample_generators(cfg, sample)
            prods = _half_products(mats, halves, pool)
            for k, t in enumerate(tuples):
                if not t:
                    rows[row, k] = 1.0
                    continue
                mid = (len(t) + 1) // 2
                left, right = t[:mid], t[mid:]
                if not right:
                    rows[row, k] = np.trace(prods[left]).real / cfg.dim
                else:
                    rows[row, k] = np.einsum(
                        "ij,ji->", prods[left], prods[right]).real / cfg.dim
        return rows

    table = np.concatenate(ordered_map(run_slice, _sample_slices(cfg)))
    means = table.mean(axis=0)
    if cfg.n_samples > 1:
        ses = table.std(axis=0, ddof=1) / math.sqrt(cfg.n_samples)
    else:
        ses = np.zeros(len(tuples))
    out = []
    for k, t in enumerate(tuples):
        if not t:
            out.append(TraceEstimate(1.0, 0.0))
        else:
            out.append(TraceEstimate(float(means[k]), float(ses[k])))
    return out


def estimate_trace(cfg: EnsembleConfig, letters: Sequence[int]) -> TraceEstimate:
    return estimate_trace_many(cfg, [letters])[0]


def _cheb_of_matrix(mat: np.ndarray, degree: int, radius: float,
                    work: list[np.ndarray] | None = None) -> np.ndarray:
    """Orthonormal Chebyshev polynomial of a Hermitian matrix.

    Matrix form of the recurrence for U_n(x/radius): q_{n+1} =
    (2/radius) x q_n - q_{n-1}, started at q_0 = I.  With a three-entry
    work list the whole recurrence runs in the caller's buffers; the
    result aliases one of them and must be consumed before the next
    call reuses it.
    """
    d = mat.shape[0]
    if work is None:
        work = [np.empty((d, d), dtype=mat.dtype) for _ in range(3)]
    prev, cur, nxt = work
    prev[:] = 0.0
    np.fill_diagonal(prev, 1.0)
    if degree == 0:
        return prev
    np.multiply(mat, 2.0 / radius, out=cur)
    for _ in range(degree - 1):
        np.matmul(mat, cur, out=nxt)
        nxt *= 2.0 / radius
        nxt -= prev
        prev, cur, nxt = cur, nxt, prev
    return cur


def estimate_trace_uword(cfg: EnsembleConfig, word: Word) -> TraceEstimate:
    """Monte Carlo trace of the orthonormal basis element labelled by word.

    Exact engines give exactly zero for nonempty words; the estimate
    quantifies how fast the matrix model approaches that.
    """
    _check_word(cfg, word.letters())
    if word.is_empty():
        return TraceEstimate(1.0, 0.0)

    def run_slice(samples: range) -> np.ndarray:
        work = [np.empty((cfg.dim, cfg.dim), np.complex128) for _ in range(3)]
        acc = [np.empty((cfg.dim, cfg.dim), np.complex128) for _ in range(2)]
        out = np.empty(len(samples))
        for row, sample in enumerate(samples):
            mats = sample_generators(cfg, sample)
            total = None
            for letter, exp in word.runs:
                factor = _cheb_of_matrix(mats[letter], exp, cfg.radius, work)
                if total is None:
                    np.copyto(acc[0], factor)
                    total = acc[0]
                else:
                    spare = acc[1] if total is acc[0] else acc[0]
                    np.matmul(total, factor, out=spare)
                    total = spare
            out[row] = np.trace(total).real / cfg.dim
        return out

    vals = np.concatenate(ordered_map(run_slice, _sample_slices(cfg)))
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(cfg.n_samples)) if cfg.n_samples > 1 else 0.0
    return TraceEstimate(mean, se)
