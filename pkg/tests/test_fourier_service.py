"""Tests for fourier_service.py - hook representation coefficients."""
import numpy as np
import pytest

from app.config import get_settings
from app.models.noise import CayleyMallowsNoise, HeatKernelNoise, SymmetricNoise
from app.models.permutation import Permutation
from app.services.distribution_service import convolve_exact, densify, exact_marginal, random_mixture
from app.services.fourier_service import (
    check_hook,
    class_parseval,
    eigenvalues,
    empirical_fourier,
    exact_fourier,
    hook_dimension,
    noise_matrix,
    rep_matrix,
    smallest_singular_value,
)
from app.services.group_service import compose, random_permutation
from app.services.noise_service import min_multiplier_up, noise_pmf_exact, spectrum
from app.utils.errors import CapExceededError, InvalidPartitionError, SizeMismatchError

NOISES = [
    SymmetricNoise(n=5, pbar=(0.3, 0.0, 0.3, 0.2, 0.1, 0.1)),
    HeatKernelNoise(n=5, t=2.0),
    CayleyMallowsNoise(n=5, theta=1.3),
]


class TestHookDimension:
    def test_falling_factorial(self):
        assert hook_dimension(5, 0) == 1
        assert hook_dimension(5, 2) == 20
        assert hook_dimension(6, 3) == 120

    def test_range(self):
        with pytest.raises(InvalidPartitionError):
            check_hook(4, 4)

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("RANKMIX_TABLOID_DIM_CAP", "10")
        get_settings.cache_clear()
        with pytest.raises(CapExceededError):
            check_hook(5, 2)


class TestRepresentation:
    def test_identity(self):
        np.testing.assert_array_equal(rep_matrix(Permutation.identity(4), 2).entries, np.eye(12))

    def test_permutation_matrix(self, rng):
        entries = rep_matrix(random_permutation(5, rng), 2).entries
        np.testing.assert_array_equal(entries.sum(axis=0), 1)
        np.testing.assert_array_equal(entries.sum(axis=1), 1)

    def test_composition_reverses_order(self, rng):
        for _ in range(20):
            g, h = random_permutation(5, rng), random_permutation(5, rng)
            lhs = rep_matrix(compose(g, h), 2).entries
            rhs = rep_matrix(h, 2).entries @ rep_matrix(g, 2).entries
            np.testing.assert_array_equal(lhs, rhs)

    def test_entry_convention(self):
        g = Permutation((3, 1, 2, 4))
        M = rep_matrix(g, 1)
        assert M.entry((1,), (3,)) == 1.0
        assert M.entry((1,), (1,)) == 0.0


class TestExactFourier:
    def test_entries_are_marginals(self, rng):
        f = random_mixture(5, 4, 0.1, rng)
        M = exact_fourier(f, 2)
        for ibar in M.tuples[:6]:
            for jbar in M.tuples[::3]:
                assert M.entry(ibar, jbar) == pytest.approx(exact_marginal(f, ibar, jbar))

    def test_sparse_and_dense_agree(self, rng):
        f = random_mixture(4, 3, 0.2, rng)
        np.testing.assert_allclose(exact_fourier(f, 2).entries, exact_fourier(densify(f), 2).entries)

    @pytest.mark.parametrize("K", NOISES, ids=lambda K: K.model)
    def test_convolution_identity(self, K, rng):
        f = random_mixture(5, 3, 0.2, rng)
        lhs = exact_fourier(convolve_exact(noise_pmf_exact(K), f), 2).entries
        K_hat, f_hat = noise_matrix(K, 2).entries, exact_fourier(f, 2).entries
        np.testing.assert_allclose(lhs, f_hat @ K_hat, atol=1e-12)
        np.testing.assert_allclose(lhs, K_hat @ f_hat, atol=1e-12)

    def test_doubly_stochastic(self, rng):
        M = exact_fourier(random_mixture(5, 4, 0.1, rng), 2).entries
        np.testing.assert_allclose(M.sum(axis=0), 1.0)
        np.testing.assert_allclose(M.sum(axis=1), 1.0)


class TestEmpiricalFourier:
    def test_matches_exact_for_repeated_samples(self):
        perms = [Permutation((2, 1, 3)), Permutation((2, 1, 3)), Permutation((1, 3, 2)), Permutation((1, 2, 3))]
        M = empirical_fourier(perms, 1)
        assert M.entry((1,), (2,)) == pytest.approx(0.5)
        assert M.entry((3,), (3,)) == pytest.approx(0.75)
        assert M.metadata["samples"] == 4

    def test_array_input(self, rng):
        images = np.asarray([rng.permutation(4) for _ in range(50)])
        M = empirical_fourier(images, 2)
        np.testing.assert_allclose(M.entries.sum(axis=1), 1.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            empirical_fourier(np.zeros((0, 3), dtype=np.int64), 1, n=3)

    def test_width_must_match_n(self):
        with pytest.raises(SizeMismatchError):
            empirical_fourier(np.tile(np.arange(4), (3, 1)), 1, n=5)


class TestNoiseSpectrum:
    @pytest.mark.parametrize("K", NOISES, ids=lambda K: K.model)
    @pytest.mark.parametrize("ell", [1, 2])
    def test_eigenvalues_are_multipliers(self, K, ell):
        allowed = np.asarray([m.value for m in spectrum(K, ell)])
        for value in eigenvalues(noise_matrix(K, ell)):
            assert np.min(np.abs(allowed - value)) < 1e-9

    @pytest.mark.parametrize("K", NOISES, ids=lambda K: K.model)
    def test_sigma_min_is_smallest_multiplier(self, K):
        sigma = smallest_singular_value(noise_matrix(K, 2).entries)
        assert sigma == pytest.approx(min_multiplier_up(K, 2), abs=1e-9)

    def test_noise_coefficient_symmetric(self):
        entries = noise_matrix(NOISES[2], 2).entries
        np.testing.assert_allclose(entries, entries.T, atol=1e-14)

    def test_cached_matrix_is_read_only(self):
        matrix = noise_matrix(NOISES[1], 1)
        with pytest.raises(ValueError):
            matrix.entries[0, 0] = 0.0
        assert noise_matrix(NOISES[1], 1) is matrix

    def test_cache_follows_poisson_tail(self, monkeypatch):
        fine = noise_matrix(NOISES[1], 1)
        monkeypatch.setenv("RANKMIX_POISSON_TAIL", "0.5")
        get_settings.cache_clear()
        coarse = noise_matrix(NOISES[1], 1)
        assert coarse is not fine
        assert not np.allclose(coarse.entries, fine.entries)

    @pytest.mark.parametrize("K", NOISES, ids=lambda K: K.model)
    def test_parseval(self, K):
        lhs, rhs = class_parseval(noise_pmf_exact(K))
        assert lhs == pytest.approx(rhs, rel=1e-10)
