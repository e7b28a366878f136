from functools import reduce

import numpy as np
import pytest

from freenoise.chebyshev import eval_u
from freenoise.errors import ValidationError
from freenoise.matmodel import (
    EnsembleConfig,
    _cheb_of_matrix,
    estimate_trace,
    estimate_trace_many,
    estimate_trace_uword,
    gue_matrix,
    sample_generators,
)
from freenoise.words import EMPTY_WORD, normalize


def test_config_validation():
    with pytest.raises(ValidationError):
        EnsembleConfig(dim=1)
    with pytest.raises(ValidationError):
        EnsembleConfig(n_generators=0)
    with pytest.raises(ValidationError):
        EnsembleConfig(n_samples=0)
    with pytest.raises(ValidationError):
        EnsembleConfig(radius=0.0)


def test_word_validation():
    cfg = EnsembleConfig(dim=8, n_generators=2, n_samples=2, max_word_len=4)
    with pytest.raises(ValidationError):
        estimate_trace(cfg, [0, 2])
    with pytest.raises(ValidationError):
        estimate_trace(cfg, [0, 1] * 3)


def test_samples_are_hermitian():
    cfg = EnsembleConfig(dim=50, n_generators=2, n_samples=1, seed=7)
    for g in range(2):
        h = gue_matrix(cfg, 0, g)
        assert np.allclose(h, h.conj().T)


def test_seed_determinism():
    cfg = EnsembleConfig(dim=30, n_generators=2, n_samples=1, seed=11)
    again = gue_matrix(cfg, 0, 1)
    assert np.array_equal(gue_matrix(cfg, 0, 1), again)
    other = EnsembleConfig(dim=30, n_generators=2, n_samples=1, seed=12)
    assert not np.array_equal(gue_matrix(other, 0, 1), again)
    # distinct samples and generator slots give distinct matrices
    assert not np.array_equal(gue_matrix(cfg, 1, 1), again)
    assert not np.array_equal(gue_matrix(cfg, 0, 0), again)


def test_spectrum_close_to_configured_radius():
    cfg = EnsembleConfig(dim=300, n_generators=1, n_samples=1, seed=3)
    evals = np.linalg.eigvalsh(gue_matrix(cfg, 0, 0))
    assert np.abs(evals).max() < 2.5
    half = EnsembleConfig(dim=300, n_generators=1, n_samples=1, seed=3,
                          radius=1.0)
    assert np.abs(np.linalg.eigvalsh(gue_matrix(half, 0, 0))).max() < 1.25


def test_estimates_match_direct_products():
    # oracle: per-sample plain matmul chain, no pooling or prefix reuse
    cfg = EnsembleConfig(dim=40, n_generators=2, n_samples=5, seed=21)
    words = [(0, 0), (0, 1, 0, 1), (0, 0, 1, 1), (1,) * 6]
    got = estimate_trace_many(cfg, words)
    for k, letters in enumerate(words):
        vals = []
        for s in range(cfg.n_samples):
            mats = sample_generators(cfg, s)
            prod = reduce(np.matmul, [mats[i] for i in letters])
            vals.append(np.trace(prod).real / cfg.dim)
        vals = np.asarray(vals)
        assert got[k].mean == pytest.approx(vals.mean(), abs=1e-12)
        assert got[k].se == pytest.approx(
            vals.std(ddof=1) / np.sqrt(cfg.n_samples), abs=1e-12)


def test_empty_word_is_exact():
    cfg = EnsembleConfig(dim=8, n_generators=1, n_samples=2)
    assert estimate_trace(cfg, []) == (1.0, 0.0)
    assert estimate_trace_uword(cfg, EMPTY_WORD) == (1.0, 0.0)


def test_thread_count_never_changes_results(monkeypatch):
    cfg = EnsembleConfig(dim=30, n_generators=2, n_samples=7, seed=5)
    words = [(0, 0), (0, 1, 0, 1)]
    word = normalize([0, 1, 0])
    base = estimate_trace_many(cfg, words)
    base_u = estimate_trace_uword(cfg, word)
    monkeypatch.setenv("FREENOISE_THREADS", "3")
    threaded = estimate_trace_many(cfg, words)
    threaded_u = estimate_trace_uword(cfg, word)
    assert threaded == base
    assert threaded_u == base_u


def test_moments_approach_free_limit():
    cfg = EnsembleConfig(dim=300, n_generators=2, n_samples=10, seed=9)
    second, alternating = estimate_trace_many(cfg, [(0, 0), (0, 1, 0, 1)])
    assert abs(second.mean - 1.0) <= max(4.0 * second.se, 0.05)
    assert abs(alternating.mean) <= max(4.0 * alternating.se, 0.05)


def test_cheb_of_matrix_matches_eigen_oracle():
    cfg = EnsembleConfig(dim=30, n_generators=1, n_samples=1, seed=13)
    h = gue_matrix(cfg, 0, 0)
    evals, vecs = np.linalg.eigh(h)
    for degree in (0, 1, 2, 5):
        oracle = (vecs * eval_u(degree, evals / 2.0)) @ vecs.conj().T
        got = _cheb_of_matrix(h, degree, 2.0)
        assert np.allclose(got, oracle, atol=1e-10)


def test_uword_estimate_shifts_the_monomial():
    # the degree-2 basis element is x^2 - 1, so the uword trace equals
    # the monomial trace minus one, sample by sample
    cfg = EnsembleConfig(dim=60, n_generators=1, n_samples=6, seed=17)
    mono = estimate_trace(cfg, [0, 0])
    uest = estimate_trace_uword(cfg, normalize([0, 0]))
    assert uest.mean == pytest.approx(mono.mean - 1.0, abs=1e-12)
    assert uest.se == pytest.approx(mono.se, abs=1e-12)


def test_uword_traces_vanish_asymptotically():
    cfg = EnsembleConfig(dim=200, n_generators=2, n_samples=8, seed=19)
    est = estimate_trace_uword(cfg, normalize([0, 1, 0]))
    assert abs(est.mean) <= max(4.0 * est.se, 0.05)
