"""
Exact oracles for distributions on S_n: densify, convolve, marginals, TV.

Dense pmfs are numpy vectors indexed by the lexicographic GroupTable.
"""
import logging
import math
from typing import Sequence, Union

import numpy as np

from app.models.mixture import DensePmf, SparseRankingMixture
from app.models.permutation import Permutation
from app.services.group_service import as_array, group_table, random_permutation
from app.utils.errors import InvalidDistributionError, InvalidTupleError, SizeMismatchError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)

Distribution = Union[DensePmf, SparseRankingMixture]


def _check_sizes(a: Distribution, b: Distribution) -> None:
    if a.n != b.n:
        raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=a.n, right=b.n))


def densify(p: Distribution) -> DensePmf:
    if isinstance(p, DensePmf):
        return p
    table = group_table(p.n)
    values = np.zeros(table.order)
    perms, weights = zip(*p.atoms)
    np.add.at(values, table.rank(as_array(perms)), weights)
    return DensePmf(p.n, values)


def point_mass(perm: Permutation) -> SparseRankingMixture:
    return SparseRankingMixture.from_atoms([(perm, 1.0)])


def uniform_pmf(n: int) -> DensePmf:
    order = group_table(n).order
    return DensePmf(n, np.full(order, 1.0 / order))


def tv_distance(a: Distribution, b: Distribution) -> float:
    _check_sizes(a, b)
    if isinstance(a, SparseRankingMixture) and isinstance(b, SparseRankingMixture):
        da, db = a.as_dict(), b.as_dict()
        keys = set(da) | set(db)
        return 0.5 * sum(abs(da.get(p, 0.0) - db.get(p, 0.0)) for p in keys)
    return 0.5 * float(np.abs(densify(a).values - densify(b).values).sum())


def convolve_exact(K: DensePmf, f: Distribution) -> DensePmf:
    """Law of pi . sigma with pi ~ K and sigma ~ f independent."""
    _check_sizes(K, f)
    table = group_table(K.n)
    out = np.zeros(table.order)
    if isinstance(f, SparseRankingMixture):
        atoms = f.atoms
    else:
        atoms = [(table.element(r), w) for r, w in enumerate(f.values) if w > 0]
    for sigma, w in atoms:
        # (pi . sigma) ranges over the right coset as pi ranges over S_n
        out[table.right_multiply_index(sigma)] += w * K.values
    return DensePmf(K.n, out / out.sum())


def validate_tuples(n: int, ibar: Sequence[int], jbar: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ibar, jbar = tuple(ibar), tuple(jbar)
    if len(ibar) != len(jbar):
        raise InvalidTupleError(MSG.TUPLE_LENGTHS.format(ibar=ibar, jbar=jbar))
    for tup in (ibar, jbar):
        if len(set(tup)) != len(tup):
            raise InvalidTupleError(MSG.TUPLE_REPEATED.format(tup=tup))
        if any(not 1 <= v <= n for v in tup):
            raise InvalidTupleError(MSG.TUPLE_RANGE.format(n=n, tup=tup))
    return ibar, jbar


def exact_marginal(f: Distribution, ibar: Sequence[int], jbar: Sequence[int]) -> float:
    """Pr[sigma(i_r) = j_r for every r]."""
    ibar, jbar = validate_tuples(f.n, ibar, jbar)
    if isinstance(f, SparseRankingMixture):
        return float(sum(w for perm, w in f.atoms if all(perm(i) == j for i, j in zip(ibar, jbar))))
    images = group_table(f.n).images
    if not ibar:
        return float(f.values.sum())
    cols = np.asarray(ibar) - 1
    mask = (images[:, cols] == np.asarray(jbar) - 1).all(axis=1)
    return float(f.values[mask].sum())


def sample(f: SparseRankingMixture, rng: np.random.Generator, size: int = 1) -> list[Permutation]:
    perms, weights = zip(*f.atoms)
    picks = rng.choice(len(perms), size=size, p=np.asarray(weights))
    return [perms[i] for i in picks]


def sample_dense(p: DensePmf, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Indices into the group table, drawn by inverse CDF."""
    cdf = np.cumsum(p.values)
    cdf /= cdf[-1]
    return np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), len(cdf) - 1)


def random_mixture(n: int, k: int, epsilon: float, rng: np.random.Generator) -> SparseRankingMixture:
    """k distinct uniform rankings; every weight is at least epsilon (requires k * epsilon <= 1)."""
    if k * epsilon > 1:
        raise InvalidDistributionError(MSG.NOT_HEAVY.format(perm=f"{k} atoms", w=1 / k, epsilon=epsilon))
    if k > math.factorial(n):
        raise InvalidDistributionError(MSG.TOO_MANY_ATOMS.format(k=k, n=n))
    chosen: dict[Permutation, None] = {}
    while len(chosen) < k:
        chosen[random_permutation(n, rng)] = None
    spare = rng.dirichlet(np.ones(k)) * (1 - k * epsilon)
    atoms = [(perm, epsilon + extra) for perm, extra in zip(chosen, spare)]
    return SparseRankingMixture.from_atoms(atoms)
