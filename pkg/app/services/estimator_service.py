"""
Marginal estimation from noisy samples.

The noisy sample distribution K*f has hook coefficient K_hat @ f_hat, so
the marginals of f are recovered as solve(K_hat, empirical coefficient).
"""
import logging
import math
from typing import Optional, Sequence, Union

import numpy as np
from scipy import linalg

from app.config import get_settings
from app.models.config import EstimatorConfig
from app.models.marginals import MarginalMatrix
from app.models.noise import NoiseModel
from app.models.permutation import Permutation
from app.services.distribution_service import validate_tuples
from app.services.fourier_service import check_hook, empirical_fourier, noise_matrix, smallest_singular_value
from app.services.noise_service import min_multiplier_up, sample_noise_batch
from app.utils.errors import InsufficientSamplesError, InvalidTupleError, SingularNoiseError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)

Samples = Union[Sequence[Permutation], np.ndarray]


def sample_budget(delta: float, tau: float, dim: int, sigma_min: float) -> int:
    """Samples for entry error delta: Hoeffding per entry at radius delta*sigma_min/(2D), union bound over D^2 entries."""
    return math.ceil(2 * (dim / (delta * sigma_min)) ** 2 * math.log(2 * dim * dim / tau))


def noise_sample_budget(delta: float, tau: float, dim: int, sigma_min: float) -> int:
    return sample_budget(delta * sigma_min / 4, tau, dim, sigma_min)


def declared_accuracy(n_samples: int, tau: float, dim: int, sigma_min: float) -> float:
    """The entry accuracy sample_budget promises at n_samples (its inverse)."""
    return 2 * dim * math.sqrt(math.log(2 * dim * dim / tau) / (2 * n_samples)) / sigma_min


def invert_noise(noise: np.ndarray, observed: np.ndarray, floor: float, n: int, ell: int) -> tuple[np.ndarray, float]:
    """solve(noise, observed) after gating on the smallest singular value of the noise coefficient."""
    sigma = smallest_singular_value(noise)
    if sigma < floor:
        raise SingularNoiseError(MSG.SINGULAR_NOISE.format(sigma=sigma, floor=floor, n=n, ell=ell))
    return linalg.solve(noise, observed), sigma


def _noise_coefficient(K: NoiseModel, ell: int, cfg: EstimatorConfig, rng: np.random.Generator) -> np.ndarray:
    settings = get_settings()
    if cfg.noise_matrix_mode == "exact" and K.n <= settings.enumeration_cap:
        return noise_matrix(K, ell).entries
    dim = check_hook(K.n, ell)
    sigma = max(min_multiplier_up(K, ell), cfg.sigma_min_floor)
    budget = noise_sample_budget(cfg.delta, cfg.tau, dim, sigma)
    count = cfg.noise_samples or min(budget, settings.max_noise_samples)
    if count < budget:
        if cfg.strict:
            raise InsufficientSamplesError(
                MSG.INSUFFICIENT_SAMPLES.format(got=count, delta=cfg.delta, tau=cfg.tau, budget=budget)
            )
        logger.warning(f"[Estimator] Noise matrix from {count} draws, below the budget {budget}")
    return empirical_fourier(sample_noise_batch(K, rng, count), ell, K.n).entries


def estimate_marginal_matrix(
    noisy_samples: Samples,
    K: NoiseModel,
    ell: int,
    cfg: Optional[EstimatorConfig] = None,
    rng: Optional[np.random.Generator] = None,
) -> MarginalMatrix:
    cfg = cfg or EstimatorConfig()
    rng = rng if rng is not None else np.random.default_rng()
    dim = check_hook(K.n, ell)

    observed = empirical_fourier(noisy_samples, ell, K.n)
    n_samples = observed.metadata["samples"]
    noise = _noise_coefficient(K, ell, cfg, rng)
    raw, sigma = invert_noise(noise, observed.entries, cfg.sigma_min_floor, K.n, ell)

    budget = sample_budget(cfg.delta, cfg.tau, dim, sigma)
    if n_samples < budget:
        if cfg.strict:
            raise InsufficientSamplesError(
                MSG.INSUFFICIENT_SAMPLES.format(got=n_samples, delta=cfg.delta, tau=cfg.tau, budget=budget)
            )
        logger.info(f"[Estimator] n={K.n} ell={ell}: {n_samples} samples (budget {budget})")

    metadata = {
        "source": "estimate",
        "samples": n_samples,
        "sigma_min": sigma,
        "mode": cfg.noise_matrix_mode,
        "budget": budget,
        "declared_delta": declared_accuracy(n_samples, cfg.tau, dim, sigma),
    }
    return MarginalMatrix(K.n, ell, np.clip(raw, 0.0, 1.0), raw=raw, metadata=metadata)


def estimate_marginal_matrix_amplified(
    batches: Sequence[Samples],
    K: NoiseModel,
    ell: int,
    cfg: Optional[EstimatorConfig] = None,
    rng: Optional[np.random.Generator] = None,
) -> MarginalMatrix:
    """Entrywise median of independent estimates over disjoint sample batches."""
    cfg = cfg or EstimatorConfig()
    estimates = [estimate_marginal_matrix(batch, K, ell, cfg, rng) for batch in batches]
    raw = np.median(np.stack([m.raw for m in estimates]), axis=0)
    metadata = {
        "source": "median",
        "batches": len(estimates),
        "samples": sum(m.metadata["samples"] for m in estimates),
        "sigma_min": estimates[0].metadata["sigma_min"],
        "declared_delta": max(m.metadata["declared_delta"] for m in estimates),
    }
    return MarginalMatrix(K.n, ell, np.clip(raw, 0.0, 1.0), raw=raw, metadata=metadata)


def estimate_from_config(
    samples: Samples,
    K: NoiseModel,
    ell: int,
    cfg: Optional[EstimatorConfig] = None,
    rng: Optional[np.random.Generator] = None,
) -> MarginalMatrix:
    """A single estimate, or the median over cfg.repetitions batches when cfg.median is set."""
    cfg = cfg or EstimatorConfig()
    if cfg.median and cfg.repetitions > 1:
        return estimate_marginal_matrix_amplified(split_batches(samples, cfg.repetitions), K, ell, cfg, rng)
    return estimate_marginal_matrix(samples, K, ell, cfg, rng)


def split_batches(samples: Samples, repetitions: int) -> list[Samples]:
    """Disjoint, nearly equal batches in the original order."""
    size = len(samples)
    bounds = np.linspace(0, size, repetitions + 1).astype(int)
    return [samples[a:b] for a, b in zip(bounds, bounds[1:]) if b > a]


def query_marginal(M: MarginalMatrix, ibar: Sequence[int], jbar: Sequence[int]) -> float:
    ibar, jbar = validate_tuples(M.n, ibar, jbar)
    if len(ibar) != M.ell:
        raise InvalidTupleError(MSG.QUERY_LENGTH.format(got=len(ibar), ell=M.ell))
    value = M.entry(ibar, jbar)
    if value < 0.0 or value > 1.0:
        M.metadata["clamped_queries"].add((ibar, jbar))
        value = min(1.0, max(0.0, value))
    return value
