"""Tests for lower_bound_service.py - hard pairs under Mallows noise."""
import math

import pytest

from app.models.partition import Partition
from app.models.permutation import Permutation
from app.services.distribution_service import tv_distance
from app.services.lower_bound_service import (
    build_hard_pair,
    distinguisher_accuracy,
    eta_of,
    separation_sweep,
    square_multiplier,
    verify_separation,
)


class TestBuildHardPair:
    def test_sign_pair(self):
        pair = build_hard_pair(1, 1)
        assert pair.m == 2
        assert pair.square == Partition((1, 1))
        assert pair.c_sq == 1
        assert pair.f1.support() == [Permutation.identity(2)]
        assert pair.f2.support() == [Permutation((2, 1))]

    def test_square_on_s6(self):
        pair = build_hard_pair(2, 1)
        assert pair.m == 6
        assert pair.square == Partition((2, 2, 2))
        assert tv_distance(pair.f1, pair.f2) == pytest.approx(1.0)
        assert int(pair.chi[pair.chi > 0].sum()) == -int(pair.chi[pair.chi < 0].sum())
        assert pair.f1.epsilon is None

    def test_parameters(self):
        with pytest.raises(ValueError):
            build_hard_pair(1, 2)
        with pytest.raises(ValueError):
            build_hard_pair(2, 0)


class TestSeparation:
    def setup_method(self):
        self.pair = build_hard_pair(2, 1)

    def test_tv_equals_square_multiplier(self):
        for theta in (0.05, 0.2, 1.0):
            result = verify_separation(self.pair, theta)
            assert result.tv == pytest.approx(abs(square_multiplier(self.pair, theta).value), abs=1e-12)

    def test_bound_holds_near_ln_j(self):
        for theta in (math.log(1.05), math.log(1.3), math.log(1.45)):
            result = verify_separation(self.pair, theta)
            assert result.bound_applicable
            assert result.passed
            assert result.tv <= 2 * result.eta**2 + 1e-12

    def test_far_from_ln_j_is_not_checked(self):
        result = verify_separation(self.pair, 2.0)
        assert not result.bound_applicable
        assert result.passed

    def test_coincide_at_ln_j(self):
        assert eta_of(self.pair, 0.0) == 0.0
        assert verify_separation(self.pair, 0.0).tv == pytest.approx(0.0, abs=1e-12)

    def test_sweep_slope_tracks_t(self):
        thetas = [math.log(1 + x) for x in (0.05, 0.1, 0.2)]
        rows, slope = separation_sweep(self.pair, thetas)
        assert len(rows) == 3
        assert all(r.bound_applicable and r.tv <= 2 * r.eta**2 + 1e-12 for r in rows)
        assert slope == pytest.approx(2.0, abs=0.3)

    def test_sweep_without_enough_points(self):
        _, slope = separation_sweep(self.pair, [0.0])
        assert slope is None


class TestDistinguisher:
    def setup_method(self):
        self.pair = build_hard_pair(1, 1)

    def test_coinciding_pair_is_a_coin_flip(self, rng):
        accuracy = distinguisher_accuracy(self.pair, 0.0, 20, 400, rng)
        assert 0.4 <= accuracy <= 0.6

    def test_low_noise_is_easy(self, rng):
        accuracy = distinguisher_accuracy(self.pair, 3.0, 50, 200, rng)
        assert accuracy > 0.95

    def test_near_coinciding_pair_defeats_likelihood_ratio(self, rng):
        pair = build_hard_pair(2, 1)
        accuracy = distinguisher_accuracy(pair, math.log(1.05), 100, 1000, rng)
        assert accuracy <= 0.55
