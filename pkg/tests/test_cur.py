import numpy as np
import pytest
from numpy.testing import assert_allclose

from curnystrom import adaptive_cur, best_rank_k, error_ratio, pinv, subspace_cur

from conftest import random_matrix


def synthetic_instance(m=200, n=150, seed=20240607):
    """Power-law spectrum with mildly heterogeneous leverage, unit Frobenius norm."""
    g = np.random.default_rng(seed)
    u = g.standard_normal((m, n))
    v = g.standard_normal((n, n))
    sigma = np.arange(1, n + 1, dtype=float) ** -1.0
    a = (u * sigma) @ v.T
    return a / np.linalg.norm(a)


class TestAdaptiveCur:
    def test_rank_k_input_exact(self, rng):
        a = random_matrix(rng, 40, 30, rank=3)
        dec = adaptive_cur(a, k=3, epsilon=0.9, rng_seed=4)
        assert np.linalg.norm(a - dec.reconstruct()) < 1e-8
        assert dec.method == "adaptive"

    def test_full_span_reconstructs_exactly(self, rng):
        # with C spanning all columns and R all rows, C U R = A
        a = rng.standard_normal((8, 6))
        u = pinv(a) @ a @ pinv(a)
        assert np.linalg.norm(a - a @ u @ a) < 1e-10

    def test_counts_and_unscaled_columns(self, rng):
        a = rng.standard_normal((60, 45))
        dec = adaptive_cur(a, k=3, epsilon=0.5, rng_seed=9)
        assert (dec.col_indices >= 0).all() and (dec.col_indices < 45).all()
        assert (dec.row_indices >= 0).all() and (dec.row_indices < 60).all()
        assert_allclose(dec.c, a[:, dec.col_indices], atol=0.0)
        assert_allclose(dec.r, a[dec.row_indices, :], atol=0.0)
        assert dec.u.shape == (len(dec.col_indices), len(dec.row_indices))

    def test_intersection_is_pinv_sandwich(self, rng):
        a = rng.standard_normal((30, 25))
        dec = adaptive_cur(a, k=2, epsilon=0.8, rng_seed=1)
        assert_allclose(dec.u, pinv(dec.c) @ a @ pinv(dec.r), atol=1e-12)

    def test_count_driven_matches_requested_budget(self, rng):
        a = rng.standard_normal((50, 40))
        dec = adaptive_cur(a, k=3, n_columns=12, n_rows=24, rng_seed=2)
        assert len(dec.col_indices) <= 12
        assert len(dec.row_indices) <= 24
        assert len(dec.row_indices) >= 13  # r1 kept columns + 12 adaptive rows

    def test_deterministic(self, rng):
        a = rng.standard_normal((40, 32))
        d1 = adaptive_cur(a, k=2, epsilon=0.7, rng_seed=21)
        d2 = adaptive_cur(a, k=2, epsilon=0.7, rng_seed=21)
        assert (d1.col_indices == d2.col_indices).all()
        assert (d1.row_indices == d2.row_indices).all()

    def test_infeasible_counts_report_minimum(self, rng):
        a = rng.standard_normal((12, 10))
        with pytest.raises(ValueError, match="matrix must be larger"):
            adaptive_cur(a, k=3, epsilon=0.3, rng_seed=0)

    def test_parameterization_is_exclusive(self, rng):
        a = rng.standard_normal((30, 20))
        with pytest.raises(ValueError, match="exactly one"):
            adaptive_cur(a, k=2, epsilon=0.5, n_columns=8, n_rows=16)
        with pytest.raises(ValueError, match="exactly one"):
            adaptive_cur(a, k=2)


class TestSubspaceCur:
    def test_identity_exact(self):
        dec = subspace_cur(np.eye(10), k=10, c=10, r=10, rng_seed=0)
        assert np.linalg.norm(np.eye(10) - dec.reconstruct()) < 1e-10

    def test_w_is_scaled_intersection(self, rng):
        a = rng.standard_normal((25, 20))
        dec = subspace_cur(a, k=4, c=8, r=10, rng_seed=3)
        # U = W^+ where W holds the selected rows of the scaled column block
        w = dec.c[dec.row_indices, :] * (dec.r[:, 0:1] / a[dec.row_indices, 0:1])
        assert_allclose(pinv(w), dec.u, atol=1e-10)

    def test_counts_out_of_range(self, rng):
        a = rng.standard_normal((10, 8))
        with pytest.raises(ValueError, match="need c"):
            subspace_cur(a, k=2, c=9, r=5)
        with pytest.raises(ValueError, match="need c"):
            subspace_cur(a, k=2, c=5, r=11)

    def test_adaptive_beats_subspace_on_paired_seeds(self):
        a = synthetic_instance()
        k, c, r = 5, 20, 80
        wins = 0
        for seed in range(10):
            ra = error_ratio(a, adaptive_cur(a, k, n_columns=c, n_rows=r, rng_seed=seed).reconstruct(), k)
            rs = error_ratio(a, subspace_cur(a, k, c, r, rng_seed=seed).reconstruct(), k)
            wins += ra <= rs
        assert wins >= 8


class TestErrorRatio:
    def test_best_rank_k_gives_one(self, rng):
        a = rng.standard_normal((12, 9))
        assert_allclose(error_ratio(a, best_rank_k(a, 3), 3), 1.0, atol=1e-10)

    def test_exact_approximation_gives_zero(self, rng):
        a = rng.standard_normal((7, 5))
        assert error_ratio(a, a.copy(), 2) < 1e-12

    def test_zero_approximation(self, rng):
        a = rng.standard_normal((9, 6))
        want = np.linalg.norm(a) / np.linalg.norm(a - best_rank_k(a, 2))
        assert_allclose(error_ratio(a, np.zeros_like(a), 2), want, rtol=1e-12)

    def test_zero_denominator_rejected(self, rng):
        a = random_matrix(rng, 8, 6, rank=2)
        with pytest.raises(ValueError, match="vanishes"):
            error_ratio(a, a, 2)


def test_markov_single_run_failure_rate():
    # fraction of single runs with ratio above 1+2*eps stays below the
    # Markov bound (1+eps)/(1+2*eps) plus three binomial standard errors
    a = synthetic_instance(m=100, n=80, seed=5)
    k, eps = 4, 0.5
    n_runs = 60
    ratios = np.array([
        error_ratio(a, adaptive_cur(a, k, eps, rng_seed=s).reconstruct(), k)
        for s in range(n_runs)
    ])
    bound = (1 + eps) / (1 + 2 * eps)
    frac = (ratios > 1 + 2 * eps).mean()
    assert frac <= bound + 3 * np.sqrt(bound * (1 - bound) / n_runs)


def test_theorem_bound_in_expectation_small_instance():
    a = synthetic_instance(m=120, n=90, seed=6)
    k, eps = 4, 0.6
    ratios = np.array([
        error_ratio(a, adaptive_cur(a, k, eps, rng_seed=s).reconstruct(), k)
        for s in range(40)
    ])
    stderr = ratios.std(ddof=1) / np.sqrt(len(ratios))
    assert ratios.mean() <= (1 + eps) + 3 * stderr
