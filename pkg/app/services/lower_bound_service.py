"""
Indistinguishable pairs under Cayley-Mallows noise.

The character of the rectangular partition (t^(t+j)) splits into a positive
and a negative part; normalized, they are two disjoint distributions whose
difference has a single nonzero Fourier component. Mallows noise with
e^theta close to j shrinks that component to at most eta^t.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from app.models.mixture import DensePmf, SparseRankingMixture
from app.models.noise import CayleyMallowsNoise
from app.models.partition import Partition
from app.services.character_service import character
from app.services.distribution_service import convolve_exact, sample_dense, tv_distance
from app.services.group_service import group_table
from app.services.noise_service import multiplier, noise_pmf_exact
from app.utils.messages import MSG

logger = logging.getLogger(__name__)

ETA_LIMIT = 0.5


@dataclass(frozen=True)
class HardPair:
    t: int
    j: int
    m: int
    square: Partition
    f1: SparseRankingMixture
    f2: SparseRankingMixture
    c_sq: int
    chi: np.ndarray  # chi_square on S_m in lexicographic order


@dataclass(frozen=True)
class SquareMultiplier:
    value: float
    eta: float
    bound: float
    bound_applicable: bool


@dataclass(frozen=True)
class SeparationResult:
    theta: float
    eta: float
    multiplier: float
    tv: float
    bound: float
    passed: bool
    bound_applicable: bool


def build_hard_pair(t: int, j: int) -> HardPair:
    if not t >= j >= 1:
        raise ValueError(MSG.HARD_PAIR_PARAMS.format(t=t, j=j))
    m = t * (t + j)
    table = group_table(m)
    square = Partition((t,) * (t + j))
    by_class = {}
    chi = np.empty(table.order, dtype=np.int64)
    for r, ct in enumerate(table.cycle_types):
        if ct not in by_class:
            by_class[ct] = character(square, ct)
        chi[r] = by_class[ct]
    c_sq = int(chi[chi > 0].sum())
    f1 = _part(table, chi, c_sq, positive=True)
    f2 = _part(table, chi, c_sq, positive=False)
    logger.info(f"[LowerBound] Square {square} on S_{m}: C_sq={c_sq}, supports {len(f1)} / {len(f2)}")
    return HardPair(t, j, m, square, f1, f2, c_sq, chi)


def _part(table, chi: np.ndarray, c_sq: int, positive: bool) -> SparseRankingMixture:
    rows = np.flatnonzero(chi > 0 if positive else chi < 0)
    atoms = [(table.element(r), abs(int(chi[r])) / c_sq) for r in rows]
    return SparseRankingMixture.from_atoms(atoms)


def eta_of(pair: HardPair, theta: float) -> float:
    return abs(math.exp(theta) - pair.j)


def square_multiplier(pair: HardPair, theta: float) -> SquareMultiplier:
    eta = eta_of(pair, theta)
    value = multiplier(CayleyMallowsNoise(n=pair.m, theta=theta), pair.square).value
    return SquareMultiplier(value=value, eta=eta, bound=eta**pair.t, bound_applicable=eta <= ETA_LIMIT)


def noisy_pair(pair: HardPair, theta: float) -> tuple[DensePmf, DensePmf]:
    K = noise_pmf_exact(CayleyMallowsNoise(n=pair.m, theta=theta))
    return convolve_exact(K, pair.f1), convolve_exact(K, pair.f2)


def verify_separation(pair: HardPair, theta: float) -> SeparationResult:
    eta = eta_of(pair, theta)
    noisy1, noisy2 = noisy_pair(pair, theta)
    tv = tv_distance(noisy1, noisy2)
    bound = 2 * eta**pair.t
    applicable = eta <= ETA_LIMIT
    passed = tv <= bound + 1e-10 if applicable else True
    if applicable and not passed:
        logger.warning(f"[LowerBound] theta={theta}: tv {tv:.3e} exceeds 2 eta^t = {bound:.3e}")
    return SeparationResult(
        theta=theta,
        eta=eta,
        multiplier=square_multiplier(pair, theta).value,
        tv=tv,
        bound=bound,
        passed=passed,
        bound_applicable=applicable,
    )


def distinguisher_accuracy(
    pair: HardPair, theta: float, n_samples: int, trials: int, rng: np.random.Generator
) -> float:
    """Success rate of the likelihood-ratio test between the two noisy distributions."""
    noisy1, noisy2 = noisy_pair(pair, theta)
    with np.errstate(divide="ignore"):
        log1, log2 = np.log(noisy1.values), np.log(noisy2.values)
    correct = 0
    for _ in range(trials):
        truth = int(rng.integers(0, 2))
        draws = sample_dense(noisy1 if truth == 0 else noisy2, rng, n_samples)
        score = log1[draws].sum() - log2[draws].sum()
        guess = int(rng.integers(0, 2)) if score == 0 else (0 if score > 0 else 1)
        correct += guess == truth
    return correct / trials


def separation_sweep(pair: HardPair, thetas: Iterable[float]) -> tuple[list[SeparationResult], Optional[float]]:
    """Rows per theta and the fitted slope of log tv against log eta (None with fewer than two usable points)."""
    rows = [verify_separation(pair, theta) for theta in thetas]
    usable = [r for r in rows if r.tv > 0 and r.eta > 0]
    slope = None
    if len(usable) >= 2:
        slope = float(np.polyfit(np.log([r.eta for r in usable]), np.log([r.tv for r in usable]), 1)[0])
    return rows, slope
