"""
Irreducible characters of S_n via the Murnaghan-Nakayama rule.

Border strips are removed on the beta-set (abacus) of the partition:
sliding a bead from position b to b - r removes an r-strip whose leg
length is the number of beads strictly between the two positions.
"""
import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

from app.models.partition import Partition
from app.services.group_service import check_cap
from app.services.partition_service import all_partitions
from app.utils.errors import InvalidPartitionError, SizeMismatchError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


def _beta_set(parts: tuple[int, ...]) -> tuple[int, ...]:
    length = len(parts)
    return tuple(p + (length - 1 - i) for i, p in enumerate(parts))


def _from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    ordered = sorted(beta, reverse=True)
    length = len(ordered)
    parts = tuple(b - (length - 1 - i) for i, b in enumerate(ordered))
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _mn(parts: tuple[int, ...], cycle_lengths: tuple[int, ...]) -> int:
    if not cycle_lengths:
        return 1 if not parts else 0
    r, rest = cycle_lengths[0], cycle_lengths[1:]
    beta = _beta_set(parts)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        leg = sum(1 for c in beta if target < c < b)
        moved = tuple(target if c == b else c for c in beta)
        total += (-1) ** leg * _mn(_from_beta(moved), rest)
    return total


def character(lam: Partition, ct: Partition) -> int:
    """chi_lambda on the conjugacy class with cycle type ct."""
    if lam.weight != ct.weight:
        raise SizeMismatchError(MSG.WEIGHT_MISMATCH.format(left=lam.weight, right=ct.weight))
    return _mn(lam.parts, tuple(sorted(ct.parts, reverse=True)))


def z_factor(ct: Partition) -> int:
    """Centralizer order prod_i i^{m_i} m_i!; the class of ct has n!/z elements."""
    result = 1
    for length, mult in Counter(ct.parts).items():
        result *= length ** mult * factorial(mult)
    return result


def class_size(ct: Partition) -> int:
    return factorial(ct.weight) // z_factor(ct)


def transposition_class(n: int) -> Partition:
    return Partition((2,) + (1,) * (n - 2))


def transposition_ratio(mu: Partition) -> Fraction:
    """chi_mu(transposition) / dim(mu), from the content sum formula."""
    n = mu.weight
    if n < 2:
        raise InvalidPartitionError(MSG.TRANSPOSITION_RATIO_SMALL_N.format(n=n))
    total = sum((p - j) * (p - j + 1) - j * (j - 1) for j, p in enumerate(mu.parts, start=1))
    return Fraction(total, n * (n - 1))


def character_table(n: int) -> dict[tuple[Partition, Partition], int]:
    check_cap(n)
    classes = all_partitions(n)
    table = {(lam, ct): character(lam, ct) for lam in classes for ct in classes}
    logger.debug(f"[Characters] Table for S_{n}: {len(classes)} x {len(classes)}")
    return table
