"""Tests for group_service.py - permutation arithmetic and group tables."""
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from app.config import get_settings
from app.models.partition import Partition
from app.models.permutation import Permutation
from app.services.character_service import class_size
from app.services.group_service import (
    bfs_distances,
    cayley_distance,
    compose,
    cycle_count,
    cycle_type,
    enumerate_sn,
    group_table,
    inverse,
    random_permutation,
    transpositions,
)
from app.utils.errors import CapExceededError, InvalidPermutationError, SizeMismatchError


def perm(*image):
    return Permutation(tuple(image))


class TestPermutationModel:
    """Parsing and validation of one-line notation."""

    def test_parse_round_trip(self):
        assert str(Permutation.parse("2,3,1")) == "2,3,1"
        assert Permutation.parse(" 1, 2 ,3 ").image == (1, 2, 3)

    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidPermutationError):
            Permutation((1, 1, 3))
        with pytest.raises(InvalidPermutationError):
            Permutation((0, 1, 2))

    def test_rejects_garbage_text(self):
        with pytest.raises(InvalidPermutationError):
            Permutation.parse("a,b")

    def test_call_is_one_based(self):
        assert perm(2, 3, 1)(1) == 2
        assert perm(2, 3, 1)(3) == 1


class TestCompose:
    def test_identity_is_neutral(self):
        sigma = perm(3, 1, 2, 4)
        assert compose(Permutation.identity(4), sigma) == sigma
        assert compose(sigma, Permutation.identity(4)) == sigma

    def test_transposition_is_involution(self):
        tau = Permutation.transposition(5, 1, 2)
        assert compose(tau, tau) == Permutation.identity(5)

    def test_apply_right_factor_first(self):
        assert compose(perm(2, 3, 1), perm(2, 1, 3)) == perm(3, 2, 1)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            compose(perm(1, 2), perm(1, 2, 3))

    def test_group_axioms_on_s4(self):
        elements = enumerate_sn(4)
        identity = Permutation.identity(4)
        for a, b, c in product(elements, repeat=3):
            assert compose(compose(a, b), c) == compose(a, compose(b, c))
        for a in elements:
            assert compose(a, inverse(a)) == identity
            assert compose(inverse(a), a) == identity


class TestInverse:
    def test_identity(self):
        assert inverse(Permutation.identity(3)) == Permutation.identity(3)

    def test_transposition(self):
        tau = Permutation.transposition(4, 2, 4)
        assert inverse(tau) == tau

    def test_three_cycle(self):
        assert inverse(perm(2, 3, 1)) == perm(3, 1, 2)

    @given(st.permutations(list(range(1, 8))))
    def test_inverse_composes_to_identity(self, image):
        a = Permutation(tuple(image))
        assert compose(a, inverse(a)) == Permutation.identity(7)


class TestCycleType:
    def test_identity(self):
        ct = cycle_type(Permutation.identity(5))
        assert ct == Partition((1, 1, 1, 1, 1))
        assert len(ct) == 5

    def test_transposition(self):
        ct = cycle_type(Permutation.transposition(5, 2, 4))
        assert ct == Partition((2, 1, 1, 1))
        assert len(ct) == 4

    def test_mixed(self):
        ct = cycle_type(perm(2, 3, 1, 5, 4))
        assert ct == Partition((3, 2))
        assert cycle_count(perm(2, 3, 1, 5, 4)) == 2


class TestCayleyDistance:
    def test_self_distance(self):
        sigma = perm(4, 2, 5, 1, 3)
        assert cayley_distance(sigma, sigma) == 0

    def test_one_transposition_away(self):
        sigma = perm(4, 2, 5, 1, 3)
        for tau in transpositions(5):
            assert cayley_distance(compose(tau, sigma), sigma) == 1

    def test_three_cycle(self):
        assert cayley_distance(perm(2, 3, 1, 4, 5), Permutation.identity(5)) == 2

    def test_matches_breadth_first_search_on_s4(self):
        table = group_table(4)
        dist = bfs_distances(4)
        elements = enumerate_sn(4)
        for a in elements:
            for b in elements:
                quotient = compose(a, inverse(b))
                assert cayley_distance(a, b) == dist[table.rank_of(quotient)]

    def test_right_invariance(self, rng):
        for _ in range(1000):
            a, b, t = (random_permutation(6, rng) for _ in range(3))
            assert cayley_distance(compose(a, t), compose(b, t)) == cayley_distance(a, b)


class TestEnumerate:
    def test_counts(self):
        assert len(enumerate_sn(3)) == 6
        assert len(set(enumerate_sn(5))) == 120

    def test_identity_first_and_lexicographic(self):
        elements = enumerate_sn(4)
        assert elements[0] == Permutation.identity(4)
        assert elements == sorted(elements)

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("RANKMIX_ENUMERATION_CAP", "4")
        get_settings.cache_clear()
        with pytest.raises(CapExceededError):
            enumerate_sn(5)


class TestGroupTable:
    def setup_method(self):
        self.table = group_table(4)

    def test_rank_matches_enumeration(self):
        for index, element in enumerate(enumerate_sn(4)):
            assert self.table.rank_of(element) == index
            assert self.table.element(index) == element

    def test_cycle_counts_match_tracing(self):
        for index, element in enumerate(enumerate_sn(4)):
            assert self.table.cycle_counts[index] == cycle_count(element)

    def test_multiplication_indices(self):
        sigma = perm(2, 4, 1, 3)
        left = self.table.left_multiply_index(sigma)
        right = self.table.right_multiply_index(sigma)
        for index, h in enumerate(enumerate_sn(4)):
            assert self.table.element(left[index]) == compose(sigma, h)
            assert self.table.element(right[index]) == compose(h, sigma)

    def test_moved_counts(self):
        assert self.table.moved_counts[0] == 0
        assert np.all(self.table.moved_counts != 1)

    def test_class_sizes(self):
        sizes = self.table.class_sizes()
        assert sum(sizes.values()) == 24
        for ct, size in sizes.items():
            assert size == class_size(ct)
