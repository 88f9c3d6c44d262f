"""Tests for estimator_service.py and oracle_service.py."""
import math

import numpy as np
import pytest
from scipy.stats import spearmanr

from app.models.config import EstimatorConfig
from app.models.marginals import MarginalMatrix
from app.models.mixture import SparseRankingMixture
from app.models.noise import CayleyMallowsNoise, HeatKernelNoise
from app.models.permutation import Permutation
from app.services.distribution_service import convolve_exact, exact_marginal
from app.services.estimator_service import (
    declared_accuracy,
    estimate_from_config,
    estimate_marginal_matrix,
    estimate_marginal_matrix_amplified,
    invert_noise,
    query_marginal,
    sample_budget,
    split_batches,
)
from app.services.fourier_service import exact_fourier, noise_matrix
from app.services.noise_service import noise_pmf_exact, sample_noisy
from app.services.oracle_service import ExactMarginalOracle, SampledMarginalOracle
from app.utils.errors import (
    InsufficientSamplesError,
    InvalidPermutationError,
    InvalidTupleError,
    SingularNoiseError,
    SizeMismatchError,
)


def mixture():
    return SparseRankingMixture.from_atoms(
        [(Permutation((2, 3, 1, 4)), 0.6), (Permutation((1, 2, 4, 3)), 0.4)]
    )


class TestEstimatorConfig:
    def test_defaults(self):
        cfg = EstimatorConfig()
        assert cfg.sigma_min_floor == pytest.approx(1e-6)
        assert cfg.repetitions == math.ceil(8 * math.log(20))

    def test_explicit_values_kept(self):
        cfg = EstimatorConfig(tau=0.1, repetitions=3, sigma_min_floor=1e-3)
        assert cfg.repetitions == 3
        assert cfg.sigma_min_floor == 1e-3


class TestBudgets:
    def test_budget_meets_declared_accuracy(self):
        for delta, tau, dim, sigma in [(0.1, 0.05, 4, 0.5), (0.02, 0.01, 20, 0.3)]:
            n_samples = sample_budget(delta, tau, dim, sigma)
            assert declared_accuracy(n_samples, tau, dim, sigma) <= delta
            assert declared_accuracy(n_samples - 1, tau, dim, sigma) == pytest.approx(delta, rel=1e-3)

    def test_budget_grows_as_noise_shrinks(self):
        assert sample_budget(0.1, 0.05, 4, 0.1) > sample_budget(0.1, 0.05, 4, 0.5)


class TestInvertNoise:
    def test_recovers_exact_coefficient(self):
        K = HeatKernelNoise(n=4, t=1.5)
        f = mixture()
        observed = exact_fourier(convolve_exact(noise_pmf_exact(K), f), 2).entries
        recovered, sigma = invert_noise(noise_matrix(K, 2).entries, observed, 1e-6, 4, 2)
        np.testing.assert_allclose(recovered, exact_fourier(f, 2).entries, atol=1e-9)
        assert sigma > 0

    def test_singular_mallows(self):
        K = CayleyMallowsNoise(n=6, theta=math.log(2))
        with pytest.raises(SingularNoiseError):
            invert_noise(noise_matrix(K, 2).entries, np.eye(30), 1e-6, 6, 2)

    def test_singular_from_samples(self, rng):
        K = CayleyMallowsNoise(n=6, theta=math.log(2))
        f = SparseRankingMixture.from_atoms([(Permutation.identity(6), 1.0)])
        with pytest.raises(SingularNoiseError):
            estimate_marginal_matrix(sample_noisy(K, f, rng, 500), K, 2, rng=rng)


class TestEstimateMarginalMatrix:
    def setup_method(self):
        self.K = HeatKernelNoise(n=4, t=0.5)
        self.f = mixture()

    def test_statistical_accuracy(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 60000)
        M = estimate_marginal_matrix(samples, self.K, 1, rng=rng)
        truth = exact_fourier(self.f, 1).entries
        assert np.max(np.abs(M.entries - truth)) < 0.03
        assert M.metadata["samples"] == 60000
        assert set(M.metadata) >= {"sigma_min", "mode", "budget", "declared_delta"}

    def test_entries_are_clamped(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 300)
        M = estimate_marginal_matrix(samples, self.K, 2, rng=rng)
        assert M.entries.min() >= 0.0
        assert M.entries.max() <= 1.0
        np.testing.assert_allclose(M.entries, np.clip(M.raw, 0.0, 1.0))

    def test_strict_mode_checks_budget(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 100)
        cfg = EstimatorConfig(delta=0.01, strict=True)
        with pytest.raises(InsufficientSamplesError):
            estimate_marginal_matrix(samples, self.K, 1, cfg, rng)

    def test_empirical_noise_matrix(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 60000)
        cfg = EstimatorConfig(noise_matrix_mode="empirical", noise_samples=60000)
        M = estimate_marginal_matrix(samples, self.K, 1, cfg, rng)
        assert np.max(np.abs(M.entries - exact_fourier(self.f, 1).entries)) < 0.05

    def test_amplified_median(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 30000)
        batches = split_batches(samples, 5)
        assert [len(b) for b in batches] == [6000] * 5
        M = estimate_marginal_matrix_amplified(batches, self.K, 1, rng=rng)
        assert M.metadata["batches"] == 5
        assert np.max(np.abs(M.entries - exact_fourier(self.f, 1).entries)) < 0.05


class TestQueryMarginal:
    def test_clamps_and_records(self):
        M = MarginalMatrix(2, 1, np.array([[1.2, -0.2], [-0.2, 1.2]]))
        assert query_marginal(M, (1,), (1,)) == 1.0
        assert query_marginal(M, (1,), (2,)) == 0.0
        assert M.was_clamped((1,), (2,))
        assert ((1,), (1,)) in M.metadata["clamped_queries"]

    def test_length_mismatch(self):
        M = MarginalMatrix(3, 1, np.eye(3))
        with pytest.raises(InvalidTupleError):
            query_marginal(M, (1, 2), (1, 2))


class TestOracles:
    def test_exact_oracle_counts_queries(self):
        oracle = ExactMarginalOracle(mixture())
        assert oracle.query((1,), (2,)) == pytest.approx(0.6)
        assert oracle.query((3, 4), (4, 3)) == pytest.approx(0.4)
        assert oracle.queries == 2
        assert oracle.delta == 0.0

    def test_sampled_oracle(self, rng):
        K = HeatKernelNoise(n=4, t=0.5)
        f = mixture()
        samples = sample_noisy(K, f, rng, 40000)
        oracle = SampledMarginalOracle.from_samples(samples, K, 2, rng=rng)
        assert oracle.query((), ()) == 1.0
        assert oracle.query((1,), (2,)) == pytest.approx(exact_marginal(f, (1,), (2,)), abs=0.05)
        assert oracle.delta > 0
        with pytest.raises(InvalidTupleError):
            oracle.query((1, 2, 3), (1, 2, 3))


class TestSampleValidation:
    def setup_method(self):
        self.K = HeatKernelNoise(n=4, t=1.0)

    def test_wider_permutations_than_noise(self, rng):
        with pytest.raises(SizeMismatchError):
            estimate_marginal_matrix([Permutation((2, 1, 3, 5, 4))] * 3, self.K, 1, rng=rng)

    def test_wider_image_rows_than_noise(self, rng):
        with pytest.raises(SizeMismatchError):
            estimate_marginal_matrix(np.tile(np.arange(5), (3, 1)), self.K, 1, rng=rng)

    def test_mixed_sizes(self, rng):
        samples = [Permutation((1, 2, 3, 4)), Permutation((1, 2, 3, 4, 5))]
        with pytest.raises(SizeMismatchError):
            estimate_marginal_matrix(samples, self.K, 1, rng=rng)

    def test_image_out_of_range(self, rng):
        with pytest.raises(InvalidPermutationError):
            estimate_marginal_matrix(np.array([[0, 1, 2, 7]]), self.K, 1, rng=rng)


class TestMedianAmplification:
    def setup_method(self):
        self.K = HeatKernelNoise(n=4, t=0.5)
        self.f = mixture()
        self.truth = exact_fourier(self.f, 1).entries

    def test_config_selects_median(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 5000)
        single = estimate_from_config(samples, self.K, 1, EstimatorConfig(), rng)
        median = estimate_from_config(samples, self.K, 1, EstimatorConfig(median=True, repetitions=5), rng)
        assert single.metadata["source"] == "estimate"
        assert median.metadata["source"] == "median"
        assert median.metadata["batches"] == 5
        assert median.metadata["samples"] == 5000

    def test_sampled_oracle_uses_median(self, rng):
        samples = sample_noisy(self.K, self.f, rng, 6000)
        cfg = EstimatorConfig(median=True, repetitions=3)
        oracle = SampledMarginalOracle.from_samples(samples, self.K, 2, cfg, rng)
        assert all(m.metadata["batches"] == 3 for m in oracle.matrices.values())

    def test_failure_rate_below_tau(self):
        cfg = EstimatorConfig(tau=0.2, median=True)
        assert cfg.repetitions == 13
        rng = np.random.default_rng(3)
        single, median = [], []
        for _ in range(30):
            samples = sample_noisy(self.K, self.f, rng, 13 * 200)
            one = estimate_marginal_matrix(samples[:200], self.K, 1, cfg, rng)
            amplified = estimate_from_config(samples, self.K, 1, cfg, rng)
            single.append(np.abs(one.raw - self.truth) > 0.05)
            median.append(np.abs(amplified.raw - self.truth) > 0.05)
        assert np.mean(median) <= cfg.tau
        assert np.mean(median) <= np.mean(single)


class TestConditioning:
    def test_error_grows_as_mallows_nears_singular(self):
        f = mixture()
        truth = exact_fourier(f, 2).entries
        sigmas, errors = [], []
        for gap in (1.0, 0.5, 0.25, 0.12, 0.06):
            K = CayleyMallowsNoise(n=4, theta=math.log(2 + gap))
            rng = np.random.default_rng(11)
            samples = sample_noisy(K, f, rng, 20000)
            M = estimate_marginal_matrix(samples, K, 2, rng=rng)
            sigmas.append(M.metadata["sigma_min"])
            errors.append(float(np.max(np.abs(M.raw - truth))))
        assert sigmas == sorted(sigmas, reverse=True)
        assert spearmanr([1 / s for s in sigmas], errors).correlation > 0.5
