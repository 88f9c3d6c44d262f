"""
Permutation arithmetic on S_n and vectorized whole-group tables.

The GroupTable keeps every element of S_n as a row of 0-based images in
lexicographic order, so distributions over S_n can be plain numpy vectors.
"""
import logging
from collections import Counter
from functools import cached_property, lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable

import numpy as np

from app.config import get_settings
from app.models.partition import Partition
from app.models.permutation import Permutation
from app.utils.errors import CapExceededError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a . b)(i) = a(b(i)): apply b first."""
    a.check_same_size(b)
    return Permutation(tuple(a.image[v - 1] for v in b.image))


def inverse(a: Permutation) -> Permutation:
    image = [0] * a.n
    for i, v in enumerate(a.image, start=1):
        image[v - 1] = i
    return Permutation(tuple(image))


def cycles(a: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest element, fixed points included."""
    seen = set()
    result = []
    for start in range(1, a.n + 1):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = a(i)
        result.append(tuple(cycle))
    return result


def cycle_type(a: Permutation) -> Partition:
    """Cycle lengths in decreasing order; its length is the cycle count."""
    return Partition(tuple(sorted((len(c) for c in cycles(a)), reverse=True)))


def cycle_count(a: Permutation) -> int:
    return len(cycles(a))


def cayley_distance(a: Permutation, b: Permutation) -> int:
    a.check_same_size(b)
    return a.n - cycle_count(compose(a, inverse(b)))


def check_cap(n: int) -> None:
    cap = get_settings().enumeration_cap
    if n > cap:
        raise CapExceededError(MSG.ENUMERATION_CAP.format(n=n, cap=cap))


def enumerate_sn(n: int) -> list[Permutation]:
    """All n! permutations in lexicographic order (identity first)."""
    check_cap(n)
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def transpositions(n: int) -> list[Permutation]:
    return [Permutation.transposition(n, a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def as_array(perms: Iterable[Permutation]) -> np.ndarray:
    """Stack permutations into an (N, n) array of 0-based images."""
    rows = [p.zero_based() for p in perms]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def from_array(images: np.ndarray) -> list[Permutation]:
    return [Permutation(tuple(int(v) + 1 for v in row)) for row in images]


class GroupTable:
    """Dense index of S_n. Row r of `images` is the r-th permutation in lexicographic order."""

    def __init__(self, n: int):
        check_cap(n)
        self.n = n
        self.order = factorial(n)
        self.images = np.asarray(list(permutations(range(n))), dtype=np.int64).reshape(self.order, n)
        self._weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.codes = self.images @ self._weights
        logger.debug(f"[Group] Built table for S_{n} ({self.order} elements)")

    def rank(self, images: np.ndarray) -> np.ndarray:
        """Positions of 0-based image rows in the lexicographic enumeration."""
        return np.searchsorted(self.codes, np.asarray(images, dtype=np.int64) @ self._weights)

    def rank_of(self, perm: Permutation) -> int:
        return int(self.rank(np.asarray([perm.zero_based()]))[0])

    def element(self, index: int) -> Permutation:
        return Permutation(tuple(int(v) + 1 for v in self.images[index]))

    def left_multiply_index(self, perm: Permutation) -> np.ndarray:
        """idx such that element idx[h] = perm . h."""
        image = np.asarray(perm.zero_based(), dtype=np.int64)
        return self.rank(image[self.images])

    def right_multiply_index(self, perm: Permutation) -> np.ndarray:
        """idx such that element idx[h] = h . perm."""
        image = np.asarray(perm.zero_based(), dtype=np.int64)
        return self.rank(self.images[:, image])

    @cached_property
    def cycle_counts(self) -> np.ndarray:
        # i is the smallest element of its cycle iff no orbit point is smaller
        start = np.broadcast_to(np.arange(self.n), self.images.shape)
        rows = np.arange(self.order)[:, None]
        current = start.copy()
        smallest = start.copy()
        for _ in range(self.n):
            current = self.images[rows, current]
            smallest = np.minimum(smallest, current)
        counts = (smallest == start).sum(axis=1)
        counts.setflags(write=False)
        return counts

    @cached_property
    def moved_counts(self) -> np.ndarray:
        counts = (self.images != np.arange(self.n)).sum(axis=1)
        counts.setflags(write=False)
        return counts

    @cached_property
    def cycle_types(self) -> list[Partition]:
        return [cycle_type(self.element(r)) for r in range(self.order)]

    def class_sizes(self) -> Counter:
        return Counter(self.cycle_types)


@lru_cache(maxsize=None)
def group_table(n: int) -> GroupTable:
    return GroupTable(n)


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    return Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))


def bfs_distances(n: int) -> np.ndarray:
    """Distance from the identity in the transposition Cayley graph, by breadth-first search."""
    table = group_table(n)
    steps = [table.left_multiply_index(t) for t in transpositions(n)]
    dist = np.full(table.order, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0])
    level = 0
    while frontier.size:
        level += 1
        reached = np.unique(np.concatenate([step[frontier] for step in steps])) if steps else np.array([], dtype=int)
        fresh = reached[dist[reached] < 0]
        dist[fresh] = level
        frontier = fresh
    return dist
