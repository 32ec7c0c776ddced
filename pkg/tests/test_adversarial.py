import numpy as np
import pytest
from numpy.testing import assert_allclose

from curnystrom import (
    AdversarialSpec,
    Selection,
    build_adversarial,
    closed_form_norms,
    disjoint_uniform_selections,
    ensemble_lower_bounds,
    ensemble_nystrom,
    intersection_eta,
    pinv,
    standard_lower_bounds,
    standard_nystrom,
    svd_full,
)


def residual_norms(a, approx):
    s = np.linalg.svd(a - approx, compute_uv=False)
    return np.sqrt((s**2).sum()), s[0], s.sum()


class TestBuild:
    def test_alpha_zero_is_identity(self):
        assert_allclose(build_adversarial(AdversarialSpec("single", 2, 0.0)), np.eye(2))

    def test_entrywise(self):
        got = build_adversarial(AdversarialSpec("single", 3, 0.5))
        want = np.array([[1.0, 0.5, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 1.0]])
        assert_allclose(got, want)

    def test_blockdiag_layout(self):
        got = build_adversarial(AdversarialSpec("blockdiag", 6, 0.5, k=2))
        block = build_adversarial(AdversarialSpec("single", 3, 0.5))
        assert_allclose(got[:3, :3], block)
        assert_allclose(got[3:, 3:], block)
        assert_allclose(got[:3, 3:], 0.0)

    def test_spsd(self):
        for spec in (
            AdversarialSpec("single", 12, 0.9),
            AdversarialSpec("blockdiag", 12, 0.7, k=3),
        ):
            eigs = np.linalg.eigvalsh(build_adversarial(spec))
            assert eigs.min() >= -1e-10

    def test_invalid_specs(self):
        with pytest.raises(ValueError, match="alpha"):
            AdversarialSpec("single", 4, 1.0)
        with pytest.raises(ValueError, match="divide"):
            AdversarialSpec("blockdiag", 10, 0.5, k=3)
        with pytest.raises(ValueError, match="family"):
            AdversarialSpec("tridiag", 4, 0.5)


class TestClosedFormNorms:
    def test_single_examples(self):
        spec = AdversarialSpec("single", 4, 0.5)
        got1 = closed_form_norms(spec, 1)
        assert_allclose(got1["residual_spectral"], 0.5)
        got2 = closed_form_norms(spec, 2)
        assert_allclose(got2["residual_nuclear"], 1.0)

    def test_blockdiag_sigma_top(self):
        spec = AdversarialSpec("blockdiag", 6, 0.5, k=2)
        got = closed_form_norms(spec, 2)
        assert_allclose(got["sigma_top"], 2.0)  # 1 + 3*0.5 - 0.5

    def test_single_matches_svd_oracle(self):
        for m, alpha in ((8, 0.3), (15, 0.8)):
            spec = AdversarialSpec("single", m, alpha)
            a = build_adversarial(spec)
            f = svd_full(a)
            for k in (1, 2, m // 2):
                got = closed_form_norms(spec, k)
                assert_allclose(got["frobenius"], np.sqrt((f.sigma**2).sum()), atol=1e-8)
                assert_allclose(got["spectral"], f.sigma[0], atol=1e-8)
                assert_allclose(got["nuclear"], f.sigma.sum(), atol=1e-8)
                assert_allclose(
                    got["residual_frobenius"], np.sqrt((f.sigma[k:] ** 2).sum()), atol=1e-8
                )
                assert_allclose(got["residual_spectral"], f.sigma[k], atol=1e-8)
                assert_allclose(got["residual_nuclear"], f.sigma[k:].sum(), atol=1e-8)

    def test_blockdiag_matches_svd_oracle(self):
        spec = AdversarialSpec("blockdiag", 20, 0.6, k=4)
        a = build_adversarial(spec)
        sigma = np.linalg.svd(a, compute_uv=False)
        got = closed_form_norms(spec, 4)
        assert_allclose(sigma[:4], np.full(4, got["sigma_top"]), atol=1e-8)
        assert_allclose(sigma[4:], np.full(16, got["sigma_tail"]), atol=1e-8)
        assert_allclose(got["residual_frobenius"], np.sqrt((sigma[4:] ** 2).sum()), atol=1e-8)
        assert_allclose(got["residual_nuclear"], sigma[4:].sum(), atol=1e-8)

    def test_k_range_checked(self):
        spec = AdversarialSpec("single", 5, 0.5)
        with pytest.raises(ValueError):
            closed_form_norms(spec, 5)
        with pytest.raises(ValueError, match="block count"):
            closed_form_norms(AdversarialSpec("blockdiag", 6, 0.5, k=2), 3)


class TestStandardLowerBounds:
    def test_ratio_spectral_is_m_over_c(self):
        spec = AdversarialSpec("single", 100, 0.8)
        assert_allclose(standard_lower_bounds(spec, 20, 10)["ratio_spectral"], 5.0)

    def test_ratio_nuclear_substitution(self):
        # (m-c)/(m-k) * (1 + k/c) at m=100, c=20, k=10
        spec = AdversarialSpec("single", 100, 0.8)
        assert_allclose(standard_lower_bounds(spec, 20, 10)["ratio_nuclear"], 4.0 / 3.0)

    def test_spectral_value(self):
        spec = AdversarialSpec("single", 100, 0.8)
        got = standard_lower_bounds(spec, 20, 10)["spectral"]
        assert_allclose(got, 0.9901234567901234, atol=1e-12)

    def test_alpha_to_one_limit_matches_ratios(self):
        # evaluated at alpha = 1 - 1e-6, the absolute bounds divided by the
        # rank-k residual norms converge to the alpha-free ratio forms
        m, c, k = 100, 20, 10
        single = AdversarialSpec("single", m, 1.0 - 1e-6)
        got = standard_lower_bounds(single, c, k)
        ref = closed_form_norms(single, k)
        assert_allclose(got["spectral"] / ref["residual_spectral"],
                        got["ratio_spectral"], rtol=1e-4)
        blk = AdversarialSpec("blockdiag", m, 1.0 - 1e-6, k=k)
        gotb = standard_lower_bounds(blk, c, k)
        refb = closed_form_norms(blk, k)
        assert_allclose(gotb["frobenius"] / refb["residual_frobenius"],
                        gotb["ratio_frobenius"], rtol=1e-4)
        assert_allclose(gotb["nuclear"] / refb["residual_nuclear"],
                        gotb["ratio_nuclear"], rtol=1e-4)

    def test_range_validation(self):
        spec = AdversarialSpec("single", 10, 0.5)
        with pytest.raises(ValueError):
            standard_lower_bounds(spec, 10, 2)


class TestEnsembleLowerBounds:
    def test_t1_reduces_to_standard_frobenius(self):
        spec = AdversarialSpec("single", 50, 0.6)
        ens = ensemble_lower_bounds(spec, c=10, k=5, t=1)
        std = standard_lower_bounds(spec, c=10, k=5)
        assert_allclose(ens["frobenius"], std["frobenius"], rtol=1e-12)

    def test_ratio_nuclear_substitution(self):
        spec = AdversarialSpec("single", 100, 0.8)
        got = ensemble_lower_bounds(spec, 20, 10, 3)["ratio_nuclear"]
        assert_allclose(got, 4.0 / 3.0)

    def test_overlap_impossible_rejected(self):
        spec = AdversarialSpec("single", 50, 0.6)
        with pytest.raises(ValueError, match="non-overlapping"):
            ensemble_lower_bounds(spec, c=20, k=5, t=3)

    def test_figure_scale_four_region_structure(self):
        # m=100, c=20, alpha=0.8, t=3: every entry of the ensemble residual
        # falls in one of four regions with predicted values
        m, c, alpha, t = 100, 20, 0.8, 3
        spec = AdversarialSpec("single", m, alpha)
        a = build_adversarial(spec)
        samples = [Selection(indices=np.arange(i * c, (i + 1) * c)) for i in range(t)]
        resid = a - ensemble_nystrom(a, samples).matrix()
        eta = intersection_eta(c, alpha)
        tc = t * c
        sampled = np.arange(m) < tc
        group = np.where(sampled, np.arange(m) // c, -1)
        same_group = group[:, None] == group[None, :]
        both = sampled[:, None] & sampled[None, :]
        diag = np.eye(m, dtype=bool)
        want = np.empty((m, m))
        want[~both & ~sampled[:, None] & ~sampled[None, :]] = alpha - eta  # region 4 off
        want[sampled[:, None] ^ sampled[None, :]] = (t - 1) / t * (alpha - eta)  # region 3
        want[both & ~same_group] = (t - 2) / t * (alpha - eta)  # region 2
        want[both & same_group] = (t - 1) / t * (alpha - eta)  # region 1 off
        want[diag & sampled[:, None]] = (t - 1) / t * (1 - eta)
        want[diag & ~sampled[:, None]] = 1 - eta
        assert np.abs(resid - want).max() < 1e-10


class TestOracleAgreement:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_single_family_equalities(self, alpha, rng):
        for m, c, k in ((30, 6, 3), (100, 20, 10), (200, 25, 8)):
            spec = AdversarialSpec("single", m, alpha)
            a = build_adversarial(spec)
            idx = rng.permutation(m)[:c]
            got = residual_norms(a, standard_nystrom(a, Selection(indices=idx)).matrix())
            bounds = standard_lower_bounds(spec, c, k)
            assert_allclose(got[0], bounds["frobenius"], atol=1e-8)
            assert_allclose(got[1], bounds["spectral"], atol=1e-8)
            assert_allclose(got[2], bounds["nuclear"], atol=1e-8)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    def test_blockdiag_balanced_equality_unbalanced_inequality(self, alpha):
        m, k, c = 120, 4, 20
        spec = AdversarialSpec("blockdiag", m, alpha, k=k)
        a = build_adversarial(spec)
        p = m // k
        balanced = np.concatenate([np.arange(i * p, i * p + c // k) for i in range(k)])
        got = residual_norms(a, standard_nystrom(a, Selection(indices=balanced)).matrix())
        bounds = standard_lower_bounds(spec, c, k)
        assert_allclose(got[0], bounds["frobenius"], atol=1e-8)
        assert_allclose(got[2], bounds["nuclear"], atol=1e-8)
        unbalanced = np.concatenate(
            [np.arange(0, 8)] + [np.arange(i * p, i * p + 4) for i in range(1, k)]
        )
        got_u = residual_norms(a, standard_nystrom(a, Selection(indices=unbalanced)).matrix())
        assert got_u[0] >= bounds["frobenius"] - 1e-8
        assert got_u[2] >= bounds["nuclear"] - 1e-8

    def test_ensemble_nuclear_equality(self):
        spec = AdversarialSpec("single", 100, 0.8)
        a = build_adversarial(spec)
        samples = disjoint_uniform_selections(100, 20, 3, rng_seed=5)
        got = residual_norms(a, ensemble_nystrom(a, samples).matrix())
        bounds = ensemble_lower_bounds(spec, 20, 10, 3)
        assert got[0] >= bounds["frobenius"] - 1e-8
        assert_allclose(got[2], bounds["nuclear"], atol=1e-8)


def test_eta_block_constant():
    for c, alpha in ((1, 0.5), (10, 0.3), (25, 0.9)):
        m = 4 * c
        a = build_adversarial(AdversarialSpec("single", m, alpha))
        block = a[c:, :c] @ pinv(a[:c, :c]) @ a[c:, :c].T
        assert np.abs(block - intersection_eta(c, alpha)).max() < 1e-10
