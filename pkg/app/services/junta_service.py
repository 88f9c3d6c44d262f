"""
Sparse signed functions on [n]^ell correlate with small juntas.

find_correlated_junta runs the live-coordinate process: while some live
coordinate spreads its weight away from the majority value, constrain that
coordinate to the non-majority value with the best weight-to-count ratio.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from app.utils.errors import SupportBoundError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JuntaResult:
    coordinates: tuple[int, ...]  # 1-based positions U
    values: tuple[int, ...]  # alpha_i for i in U
    correlation: float
    rounds: int
    bound: float


def correlation_bound(k: int, ell: int, junta_size: int) -> float:
    """(4/5) k^-1 (10 min(k, ell))^-|U|."""
    return 0.8 / k * (10 * min(k, ell)) ** (-junta_size)


def distinguishing_coordinates(support: Sequence[tuple[int, ...]]) -> list[int]:
    """Greedy set of 0-based coordinates on which the support strings have distinct projections."""
    if len(support) < 2:
        return []
    classes = {tuple(): list(support)}
    chosen = []
    for j in range(len(support[0])):
        if all(len(members) == 1 for members in classes.values()):
            break
        split = defaultdict(list)
        for key, members in classes.items():
            for x in members:
                split[key + (x[j],)].append(x)
        if len(split) > len(classes):
            chosen.append(j)
            classes = split
    return chosen


def find_correlated_junta(g: Mapping[tuple[int, ...], float], k: int) -> JuntaResult:
    support = sorted(x for x, v in g.items() if v != 0)
    if len(support) > k:
        raise SupportBoundError(MSG.SUPPORT_BOUND.format(count=len(support), k=k))
    norm = math.fsum(abs(g[x]) for x in support)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(MSG.L1_NOT_ONE.format(norm=norm))
    ell = len(support[0]) if support else 0
    k_prime = min(k, ell) if ell else 1
    threshold = 1 - 1 / (10 * k_prime)

    live_coords = distinguishing_coordinates(support)
    live = list(support)
    coordinates, values = [], []
    while True:
        total = math.fsum(abs(g[x]) for x in live)
        pick = None
        for j in live_coords:
            count, weight = defaultdict(int), defaultdict(float)
            for x in live:
                count[x[j]] += 1
                weight[x[j]] += abs(g[x])
            majority = min(count, key=lambda a: (-count[a], a))
            if weight[majority] / total <= threshold:
                pick = (j, majority, count, weight)
                break
        if pick is None:
            break
        j, majority, count, weight = pick
        alpha = max(
            (a for a in count if a != majority),
            key=lambda a: ((weight[a] / total) / (count[a] / len(live)), -a),
        )
        coordinates.append(j + 1)
        values.append(alpha)
        live_coords.remove(j)
        live = [x for x in live if x[j] == alpha]
        logger.debug(f"[Junta] Constrained x_{j + 1} = {alpha}, {len(live)} live strings left")

    correlation = abs(math.fsum(g[x] for x in live))
    return JuntaResult(
        coordinates=tuple(coordinates),
        values=tuple(values),
        correlation=correlation,
        rounds=len(coordinates),
        bound=correlation_bound(k, max(ell, 1), len(coordinates)),
    )
