"""
Partitions and Young diagrams: dominance, hooks, contents, dimensions and
path counts in Young's lattice.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from app.models.partition import Partition
from app.utils.errors import InvalidPartitionError, SizeMismatchError
from app.utils.messages import MSG

PARTITION_CAP = 30


@dataclass(frozen=True)
class CellAnnotation:
    row: int
    col: int
    hook: int
    content: int


def all_partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse lexicographic order: (n) first, (1^n) last."""
    if n > PARTITION_CAP:
        raise InvalidPartitionError(MSG.PARTITION_TOO_LARGE.format(cap=PARTITION_CAP, n=n))
    return [Partition(p) for p in _partitions(n, n)]


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def dominates(mu: Partition, lam: Partition) -> bool:
    if mu.weight != lam.weight:
        raise SizeMismatchError(MSG.WEIGHT_MISMATCH.format(left=mu.weight, right=lam.weight))
    total_mu = total_lam = 0
    for i in range(max(len(mu), len(lam))):
        total_mu += mu.parts[i] if i < len(mu) else 0
        total_lam += lam.parts[i] if i < len(lam) else 0
        if total_mu < total_lam:
            return False
    return True


def cell_annotations(lam: Partition) -> list[CellAnnotation]:
    conj = lam.conjugate().parts
    return [
        CellAnnotation(
            row=i,
            col=j,
            hook=(lam.parts[i - 1] - j) + (conj[j - 1] - i) + 1,
            content=j - i,
        )
        for i, j in lam.cells()
    ]


@lru_cache(maxsize=None)
def irrep_dimension(lam: Partition) -> int:
    """Hook length formula."""
    hooks = prod(c.hook for c in cell_annotations(lam))
    return factorial(lam.weight) // hooks


def addable(mu: Partition) -> list[Partition]:
    """Partitions obtained from mu by adding a single box."""
    parts = list(mu.parts)
    result = []
    for i in range(len(parts) + 1):
        current = parts[i] if i < len(parts) else 0
        above = parts[i - 1] if i > 0 else None
        if above is None or current < above:
            grown = parts[:i] + [current + 1] + parts[i + 1:]
            result.append(Partition(tuple(grown)))
    return result


@lru_cache(maxsize=None)
def lattice_paths(mu: Partition, lam: Partition) -> int:
    """Saturated chains mu -> lam in Young's lattice (skew standard tableaux of shape lam/mu)."""
    if mu.weight > lam.weight or not lam.contains(mu):
        return 0
    if mu.weight == lam.weight:
        return 1
    return sum(lattice_paths(nu, lam) for nu in addable(mu) if lam.contains(nu))


def hook_partition(n: int, ell: int) -> Partition:
    if not 0 <= ell <= n - 1:
        raise InvalidPartitionError(MSG.HOOK_RANGE.format(n=n, ell=ell))
    return Partition((n - ell,) + (1,) * ell)


def up_set(lam: Partition) -> list[Partition]:
    return [mu for mu in all_partitions(lam.weight) if dominates(mu, lam)]


def trivial(j: int) -> Partition:
    """Triv_j: the one-row partition (j); Triv_0 is empty."""
    return Partition((j,) if j > 0 else ())
