"""
Fourier coefficients at the hook permutation representation.

Rows and columns are indexed by ordered ell-tuples of distinct elements
(lexicographic). For a distribution p the (ibar, jbar) entry of its
coefficient is Pr_{sigma ~ p}[sigma(i_r) = j_r for all r].

With this indexing rep(g . h) = rep(h) @ rep(g); coefficients of class
functions commute with every rep(g), so K_hat @ f_hat = f_hat @ K_hat for
all three noise families.
"""
import logging
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Union

import numpy as np

from app.config import get_settings
from app.models.marginals import MarginalMatrix, hook_tuples, tuple_code
from app.models.mixture import DensePmf, SparseRankingMixture
from app.models.noise import NoiseModel
from app.models.permutation import Permutation
from app.services.character_service import character
from app.services.group_service import as_array, group_table
from app.services.noise_service import noise_pmf_exact
from app.services.partition_service import all_partitions, irrep_dimension
from app.utils.errors import CapExceededError, InvalidPartitionError, InvalidPermutationError, SizeMismatchError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)

# entries of the (rows x D) index block processed per chunk
CHUNK_ENTRIES = 2_000_000


def hook_dimension(n: int, ell: int) -> int:
    """n (n-1) ... (n-ell+1): the number of ordered ell-tuples."""
    return factorial(n) // factorial(n - ell)


def check_hook(n: int, ell: int) -> int:
    if not 0 <= ell <= n - 1:
        raise InvalidPartitionError(MSG.HOOK_RANGE.format(n=n, ell=ell))
    dim = hook_dimension(n, ell)
    cap = get_settings().tabloid_dim_cap
    if dim > cap:
        raise CapExceededError(MSG.TABLOID_CAP.format(dim=dim, cap=cap, n=n, ell=ell))
    return dim


@lru_cache(maxsize=64)
def _tuple_index(n: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    tuples = np.asarray(hook_tuples(n, ell), dtype=np.int64) - 1
    lookup = np.full(n**ell, -1, dtype=np.int64)
    lookup[tuple_code(tuples, n)] = np.arange(len(tuples))
    return tuples, lookup


def accumulate(images: np.ndarray, weights: np.ndarray, n: int, ell: int) -> np.ndarray:
    """sum_r weights[r] * rep(images[r]) for 0-based image rows."""
    dim = check_hook(n, ell)
    tuples, lookup = _tuple_index(n, ell)
    matrix = np.zeros(dim * dim)
    chunk = max(1, CHUNK_ENTRIES // dim)
    row_offsets = np.arange(dim, dtype=np.int64) * dim
    for start in range(0, len(images), chunk):
        block = images[start:start + chunk]
        cols = lookup[tuple_code(block[:, tuples], n)]
        flat = (row_offsets + cols).ravel()
        matrix += np.bincount(flat, weights=np.repeat(weights[start:start + chunk], dim), minlength=dim * dim)
    return matrix.reshape(dim, dim)


def rep_matrix(g: Permutation, ell: int) -> MarginalMatrix:
    entries = accumulate(as_array([g]), np.ones(1), g.n, ell)
    return MarginalMatrix(g.n, ell, entries, metadata={"source": "rep", "perm": str(g)})


def exact_fourier(p: Union[DensePmf, SparseRankingMixture], ell: int) -> MarginalMatrix:
    if isinstance(p, SparseRankingMixture):
        perms, weights = zip(*p.atoms)
        images, weights = as_array(perms), np.asarray(weights)
    else:
        support = np.flatnonzero(p.values > 0)
        images, weights = group_table(p.n).images[support], p.values[support]
    entries = accumulate(images, weights, p.n, ell)
    return MarginalMatrix(p.n, ell, entries, metadata={"source": "exact"})


def empirical_fourier(
    samples: Union[Sequence[Permutation], np.ndarray], ell: int, n: Optional[int] = None
) -> MarginalMatrix:
    """Average of rep(sample); samples are Permutations or an (N, n) array of 0-based images."""
    if isinstance(samples, np.ndarray):
        images = samples
    else:
        widths = sorted({p.n for p in samples})
        if len(widths) > 1:
            raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=widths[0], right=widths[-1]))
        images = as_array(samples)
    if len(images) == 0:
        raise ValueError(MSG.EMPTY_SAMPLES)
    n = n or images.shape[1]
    if images.ndim != 2 or images.shape[1] != n:
        raise SizeMismatchError(MSG.SAMPLE_WIDTH.format(got=images.shape[-1], n=n))
    low, high = int(images.min()), int(images.max())
    if low < 0 or high >= n:
        raise InvalidPermutationError(MSG.SAMPLE_RANGE.format(top=n - 1, low=low, high=high))
    distinct, counts = np.unique(images, axis=0, return_counts=True)
    entries = accumulate(distinct, counts / counts.sum(), n, ell)
    return MarginalMatrix(n, ell, entries, metadata={"source": "empirical", "samples": int(len(images))})


def noise_matrix(K: NoiseModel, ell: int) -> MarginalMatrix:
    """Exact Fourier coefficient of the noise at the ell-hook (read-only, shared between callers)."""
    check_hook(K.n, ell)
    return _noise_matrix(K, ell, get_settings().poisson_tail)


@lru_cache(maxsize=64)
def _noise_matrix(K: NoiseModel, ell: int, tail: float) -> MarginalMatrix:
    matrix = exact_fourier(noise_pmf_exact(K, tail), ell)
    matrix.entries.setflags(write=False)
    matrix.metadata["source"] = "noise"
    return matrix


def eigenvalues(matrix: MarginalMatrix) -> np.ndarray:
    """Eigenvalues of a symmetric coefficient (noise pmfs are inverse-invariant)."""
    return np.linalg.eigvalsh(0.5 * (matrix.entries + matrix.entries.T))


def smallest_singular_value(entries: np.ndarray) -> float:
    return float(np.linalg.svd(entries, compute_uv=False).min())


def class_parseval(p: DensePmf) -> tuple[float, float]:
    """
    Both sides of Parseval for a class function p:
    sum_g p(g)^2 and (1/n!) sum_lambda dim^2 c_lambda^2 with c_lambda = <p, chi_lambda>/dim.
    """
    table = group_table(p.n)
    lhs = float(p.values @ p.values)
    rhs = 0.0
    for lam in all_partitions(p.n):
        chi = np.asarray([character(lam, ct) for ct in table.cycle_types], dtype=float)
        dim = irrep_dimension(lam)
        c = float(p.values @ chi) / dim
        rhs += dim * dim * c * c
    return lhs, rhs / table.order
