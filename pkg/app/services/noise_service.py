"""
Noise models: exact pmfs, samplers and Fourier multipliers.

All three families are class functions, so their Fourier coefficient at the
irreducible indexed by mu is a scalar multiple of the identity. The scalar is
computed here in closed form and cross-checked against character sums.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.stats import poisson

from app.config import get_settings
from app.models.mixture import DensePmf
from app.models.noise import CayleyMallowsNoise, HeatKernelNoise, NoiseModel, SymmetricNoise
from app.models.partition import Partition
from app.models.permutation import Permutation
from app.services.character_service import character, transposition_ratio
from app.services.distribution_service import sample_dense
from app.services.group_service import (
    cayley_distance,
    check_cap,
    cycle_count,
    from_array,
    group_table,
    transpositions,
)
from app.services.partition_service import (
    all_partitions,
    cell_annotations,
    hook_partition,
    irrep_dimension,
    lattice_paths,
    trivial,
    up_set,
)
from app.utils.errors import SizeMismatchError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Multiplier:
    mu: Partition
    value: float


# ==================== EXACT PMFS ====================

def noise_pmf_exact(K: NoiseModel, tail: Optional[float] = None) -> DensePmf:
    """Exact noise pmf over S_n; the heat kernel drops Poisson mass beyond `tail` (settings default)."""
    check_cap(K.n)
    return _noise_pmf(K, tail if tail is not None else get_settings().poisson_tail)


@lru_cache(maxsize=32)
def _noise_pmf(K: NoiseModel, tail: float) -> DensePmf:
    table = group_table(K.n)
    if isinstance(K, SymmetricNoise):
        values = _symmetric_pmf(K, table.moved_counts)
    elif isinstance(K, HeatKernelNoise):
        values = _heat_pmf(K, tail)
    else:
        q = K.q
        values = q ** table.cycle_counts.astype(float) / _rising(q, K.n)
    return DensePmf(K.n, values / values.sum())


def _rising(q: float, n: int) -> float:
    """q (q+1) ... (q+n-1)."""
    return math.prod(q + i for i in range(n))


def _symmetric_pmf(K: SymmetricNoise, moved: np.ndarray) -> np.ndarray:
    n = K.n
    # a permutation moving m points is drawn at level j iff the subset contains those m points
    by_moved = np.zeros(n + 1)
    for m in range(n + 1):
        by_moved[m] = sum(
            K.pbar[j] * math.comb(n - m, j - m) / (math.comb(n, j) * math.factorial(j))
            for j in range(m, n + 1)
        )
    return by_moved[moved]


def poisson_cutoff(t: float, tail: Optional[float] = None) -> int:
    """Smallest J with Pr[Poi(t) > J] below the tail threshold."""
    tail = tail if tail is not None else get_settings().poisson_tail
    if t == 0:
        return 0
    return int(poisson.isf(tail, t)) + 1


def _heat_pmf(K: HeatKernelNoise, tail: float) -> np.ndarray:
    n, table = K.n, group_table(K.n)
    steps = [table.left_multiply_index(tau) for tau in transpositions(n)]
    walk = np.zeros(table.order)
    walk[0] = 1.0
    cutoff = poisson_cutoff(K.t, tail)
    weights = poisson.pmf(np.arange(cutoff + 1), K.t)
    total = weights[0] * walk
    for j in range(1, cutoff + 1):
        step = walk / n
        for idx in steps:
            step += (2.0 / n**2) * walk[idx]
        walk = step
        total += weights[j] * walk
    logger.debug(f"[Noise] Heat pmf n={n} t={K.t}: {cutoff} Poisson terms, kept mass {weights.sum():.12f}")
    return total


# ==================== SAMPLERS ====================

def sample_noise(K: NoiseModel, rng: np.random.Generator) -> Permutation:
    return from_array(sample_noise_batch(K, rng, 1))[0]


def sample_noise_batch(K: NoiseModel, rng: np.random.Generator, size: int) -> np.ndarray:
    """(size, n) array of 0-based images drawn from K."""
    if isinstance(K, SymmetricNoise):
        return _sample_symmetric(K, rng, size)
    if isinstance(K, HeatKernelNoise):
        return _sample_heat(K, rng, size)
    return _sample_mallows(K, rng, size)


def _sample_symmetric(K: SymmetricNoise, rng: np.random.Generator, size: int) -> np.ndarray:
    n = K.n
    levels = rng.choice(n + 1, size=size, p=np.asarray(K.pbar) / math.fsum(K.pbar))
    out = np.tile(np.arange(n), (size, 1))
    for row, j in enumerate(levels):
        if j < 2:
            continue
        subset = rng.choice(n, size=j, replace=False)
        out[row, subset] = subset[rng.permutation(j)]
    return out


def _apply_transpositions(state: np.ndarray, rows: np.ndarray, a: np.ndarray, b: np.ndarray) -> None:
    """state[rows] <- (a b) . state[rows], i.e. swap the values a and b."""
    block = state[rows]
    is_a = block == a[:, None]
    is_b = block == b[:, None]
    state[rows] = np.where(is_a, b[:, None], np.where(is_b, a[:, None], block))


def _random_pairs(n: int, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    a = rng.integers(0, n, size=size)
    b = (a + rng.integers(1, n, size=size)) % n
    return a, b


def _sample_heat(K: HeatKernelNoise, rng: np.random.Generator, size: int) -> np.ndarray:
    n = K.n
    state = np.tile(np.arange(n), (size, 1))
    if n == 1:
        return state
    lengths = rng.poisson(K.t, size=size)
    for step in range(int(lengths.max(initial=0))):
        rows = np.flatnonzero(lengths > step)
        # lazy walk: hold with probability 1/n
        rows = rows[rng.random(rows.size) >= 1.0 / n]
        a, b = _random_pairs(n, rng, rows.size)
        _apply_transpositions(state, rows, a, b)
    return state


def _sample_mallows(K: CayleyMallowsNoise, rng: np.random.Generator, size: int) -> np.ndarray:
    settings = get_settings()
    method = settings.mallows_sampler
    if method == "auto":
        method = "exact" if K.n <= settings.enumeration_cap else "metropolis"
    if method == "exact":
        return group_table(K.n).images[sample_dense(noise_pmf_exact(K), rng, size)].copy()
    if method == "restaurant":
        return sample_mallows_restaurant_batch(K.theta, K.n, rng, size)
    return sample_mallows_metropolis_batch(K.theta, K.n, burn_in_steps(K.n), rng, size)


def burn_in_steps(n: int) -> int:
    return get_settings().metropolis_burn_in_factor * n * max(1, math.ceil(math.log(n))) if n > 1 else 1


def sample_mallows_metropolis(theta: float, n: int, steps: int, rng: np.random.Generator) -> Permutation:
    return from_array(sample_mallows_metropolis_batch(theta, n, steps, rng, 1))[0]


def sample_mallows_metropolis_batch(
    theta: float, n: int, steps: int, rng: np.random.Generator, size: int
) -> np.ndarray:
    """
    Independent Metropolis chains started at the identity.

    A proposal multiplies by a uniform transposition (a b); it splits a
    cycle (+1 cycle) when a and b share a cycle and merges two otherwise.
    """
    if steps < 1:
        raise ValueError(MSG.METROPOLIS_STEPS.format(steps=steps))
    state = np.tile(np.arange(n), (size, 1))
    if n == 1:
        return state
    q = math.exp(theta)
    accept_split, accept_merge = min(1.0, q), min(1.0, 1.0 / q)
    rows = np.arange(size)
    for _ in range(steps):
        a, b = _random_pairs(n, rng, size)
        current = a.copy()
        same_cycle = np.zeros(size, dtype=bool)
        for _ in range(n):
            current = state[rows, current]
            same_cycle |= current == b
        accept = np.where(same_cycle, accept_split, accept_merge)
        moved = np.flatnonzero(rng.random(size) < accept)
        _apply_transpositions(state, moved, a[moved], b[moved])
    return state


def metropolis_transition_probability(a: Permutation, b: Permutation, q: Union[Fraction, float]):
    """P(a -> b) for distinct a, b of the Metropolis chain; exact when q is a Fraction."""
    if a.n != b.n:
        raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=a.n, right=b.n))
    if cayley_distance(a, b) != 1:
        return Fraction(0)
    delta = cycle_count(b) - cycle_count(a)
    ratio = q**delta
    return Fraction(1, math.comb(a.n, 2)) * min(1, ratio)


def sample_mallows_restaurant(theta: float, n: int, rng: np.random.Generator) -> Permutation:
    return from_array(sample_mallows_restaurant_batch(theta, n, rng, 1))[0]


def sample_mallows_restaurant_batch(theta: float, n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """
    Chinese-restaurant construction of q^cycles / (q(q+1)...(q+n-1)).

    Element r opens a new cycle with probability q/(r+q); otherwise it is
    seated right after a uniformly chosen earlier element.
    """
    q = math.exp(theta)
    successor = np.zeros((size, n), dtype=np.int64)
    rows = np.arange(size)
    for r in range(n):
        successor[:, r] = r
        if r == 0:
            continue
        joins = rng.random(size) >= q / (r + q)
        target = rng.integers(0, r, size=size)
        j_rows, j_target = rows[joins], target[joins]
        successor[j_rows, r] = successor[j_rows, j_target]
        successor[j_rows, j_target] = r
    return successor


def sample_noisy(K: NoiseModel, f, rng: np.random.Generator, size: int) -> np.ndarray:
    """(size, n) 0-based images of pi . sigma with pi ~ K and sigma ~ f."""
    if f.n != K.n:
        raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=K.n, right=f.n))
    perms, weights = zip(*f.atoms)
    atoms = np.asarray([p.zero_based() for p in perms], dtype=np.int64)
    sigma = atoms[rng.choice(len(perms), size=size, p=np.asarray(weights))]
    noise = sample_noise_batch(K, rng, size)
    return np.take_along_axis(noise, sigma, axis=1)


# ==================== MULTIPLIERS ====================

def multiplier(K: NoiseModel, mu: Partition) -> Multiplier:
    if mu.weight != K.n:
        raise SizeMismatchError(MSG.WEIGHT_MISMATCH.format(left=K.n, right=mu.weight))
    return Multiplier(mu, _multiplier_value(K, mu))


@lru_cache(maxsize=4096)
def _multiplier_value(K: NoiseModel, mu: Partition) -> float:
    n = K.n
    if isinstance(K, SymmetricNoise):
        dim = irrep_dimension(mu)
        return math.fsum(p * lattice_paths(trivial(j), mu) for j, p in enumerate(K.pbar)) / dim
    if isinstance(K, HeatKernelNoise):
        if n == 1:
            return 1.0
        return math.exp(-K.t * (1.0 - transposition_multiplier(mu)))
    q = K.q
    numerator = math.prod(q + c.content for c in cell_annotations(mu))
    return numerator / _rising(q, n)


def transposition_multiplier(mu: Partition) -> float:
    """Eigenvalue of one lazy random-transposition step on the irreducible mu."""
    n = mu.weight
    return 1.0 / n + (n - 1) / n * float(transposition_ratio(mu))


def heat_series_multiplier(K: HeatKernelNoise, mu: Partition, tail: Optional[float] = None) -> float:
    """Truncated Poisson series sum_j Poi(t)(j) c_trans^j."""
    c_trans = transposition_multiplier(mu) if K.n > 1 else 1.0
    cutoff = poisson_cutoff(K.t, tail)
    j = np.arange(cutoff + 1)
    return float(np.sum(poisson.pmf(j, K.t) * c_trans**j))


def multiplier_by_character_sum(K: NoiseModel, mu: Partition) -> float:
    """sum_sigma K(sigma) chi_mu(sigma) / dim(mu), by brute force over S_n."""
    pmf = noise_pmf_exact(K)
    table = group_table(K.n)
    chi = np.asarray([character(mu, ct) for ct in table.cycle_types], dtype=float)
    return float(pmf.values @ chi) / irrep_dimension(mu)


def min_multiplier_up(K: NoiseModel, ell: int) -> float:
    lam = hook_partition(K.n, ell)
    return min(abs(multiplier(K, mu).value) for mu in up_set(lam))


def spectrum(K: NoiseModel, ell: Optional[int] = None) -> list[Multiplier]:
    """Multipliers over all partitions of n, or over the up-set of the ell-hook."""
    mus = all_partitions(K.n) if ell is None else up_set(hook_partition(K.n, ell))
    return [multiplier(K, mu) for mu in mus]


def dist_theta(theta: float, ell: int) -> float:
    if ell < 1:
        raise ValueError(MSG.DIST_ELL.format(ell=ell))
    q = math.exp(theta)
    return min(abs(q - j) for j in range(1, ell + 1))


# ==================== IDENTIFIABILITY REPORT ====================

HEAT_CONSTANT = 4.0


def sufficiency_report(K: NoiseModel, k: int) -> dict:
    """Sufficient identifiability conditions at ell = ceil(log2 k), next to the exact sigma_min."""
    n = K.n
    ell = min(max(1, math.ceil(math.log2(k))), max(n - 1, 0))
    report = {"model": K.model, "n": n, "k": k, "ell": ell}
    if n > 1:
        report["min_multiplier_up"] = min_multiplier_up(K, ell)
    if isinstance(K, SymmetricNoise):
        mass = math.fsum(K.pbar[: n - ell + 1])
        report["low_level_mass"] = mass
        report["sigma_floor"] = mass / n**ell
    elif isinstance(K, HeatKernelNoise):
        report["t_over_n_log_n"] = K.t / (n * math.log(n)) if n > 1 else 0.0
        report["sigma_floor"] = 0.5 * math.exp(-HEAT_CONSTANT * ell * K.t / n)
    else:
        eta = dist_theta(K.theta, ell)
        report["dist_theta"] = eta
        report["sigma_floor"] = (2 * n) ** (-ell) * eta ** (2 * math.sqrt(ell))
    logger.info(f"[Noise] Sufficiency report: {report}")
    return report

