"""
Identity suites behind `rankmix verify`.

Each suite evaluates a family of exact identities at a given n and reports
the largest deviation it saw.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from app.models.noise import CayleyMallowsNoise, HeatKernelNoise, NoiseModel, SymmetricNoise
from app.models.partition import Partition
from app.services import character_service as chars
from app.services.distribution_service import tv_distance
from app.services.fourier_service import class_parseval, eigenvalues, noise_matrix, smallest_singular_value
from app.services.group_service import bfs_distances, cycle_count, enumerate_sn, group_table
from app.services.lower_bound_service import build_hard_pair, verify_separation
from app.services.noise_service import (
    min_multiplier_up,
    multiplier,
    multiplier_by_character_sum,
    noise_pmf_exact,
    spectrum,
)
from app.services.partition_service import (
    all_partitions,
    cell_annotations,
    dominates,
    hook_partition,
    irrep_dimension,
    lattice_paths,
    up_set,
)

logger = logging.getLogger(__name__)

TOLERANCE = 1e-8


@dataclass(frozen=True)
class VerifyRow:
    suite: str
    name: str
    deviation: float
    passed: bool


def _row(suite: str, name: str, deviation: float, tol: float = TOLERANCE) -> VerifyRow:
    return VerifyRow(suite, name, float(deviation), bool(deviation <= tol))


def sn_core_suite(n: int) -> list[VerifyRow]:
    n = min(n, 6)
    table = group_table(n)
    formula = n - table.cycle_counts
    bfs = bfs_distances(n)
    perms = enumerate_sn(n)
    return [
        _row("sn_core", f"cayley distance equals BFS distance on S_{n}", np.abs(formula - bfs).max()),
        _row("sn_core", f"cycle counts agree with cycle tracing on S_{n}",
             max(abs(cycle_count(p) - int(c)) for p, c in zip(perms, table.cycle_counts))),
        _row("sn_core", f"enumeration has n! distinct elements for n={n}", abs(len(set(perms)) - math.factorial(n))),
    ]


def partitions_suite(n: int) -> list[VerifyRow]:
    parts = all_partitions(n)
    dims = sum(irrep_dimension(lam) ** 2 for lam in parts)
    path_gap = max(abs(lattice_paths(Partition((1,)), lam) - irrep_dimension(lam)) for lam in parts)
    hook_gap = 0
    for ell in range(n):
        hook = hook_partition(n, ell)
        hook_gap = max(hook_gap, max(hook.parts[0] - mu.parts[0] for mu in up_set(hook)))
    antisym = sum(1 for a in parts for b in parts if a != b and dominates(a, b) and dominates(b, a))
    hooks_from_cells = max(
        abs(math.factorial(n) // math.prod(c.hook for c in cell_annotations(lam)) - irrep_dimension(lam))
        for lam in parts
    )
    return [
        _row("partitions", f"sum of squared dimensions equals {n}!", abs(dims - math.factorial(n))),
        _row("partitions", "paths from a single box count standard tableaux", path_gap),
        _row("partitions", "up-set of the hook keeps first part >= n - ell", max(hook_gap, 0)),
        _row("partitions", "dominance is antisymmetric", antisym),
        _row("partitions", "hook product matches dimension", hooks_from_cells),
    ]


def characters_suite(n: int) -> list[VerifyRow]:
    n = min(n, 7)
    parts = all_partitions(n)
    order = math.factorial(n)
    sizes = {ct: chars.class_size(ct) for ct in parts}
    table = chars.character_table(n)

    first = 0
    for lam in parts:
        for mu in parts:
            inner = Fraction(sum(sizes[c] * table[lam, c] * table[mu, c] for c in parts), order)
            first = max(first, abs(inner - (1 if lam == mu else 0)))
    column = 0
    for c in parts:
        for d in parts:
            total = sum(table[lam, c] * table[lam, d] for lam in parts)
            column = max(column, abs(total - (order // sizes[c] if c == d else 0)))
    ratio = 0
    if n >= 2:
        trans = chars.transposition_class(n)
        ratio = max(
            abs(chars.transposition_ratio(mu) - Fraction(table[mu, trans], irrep_dimension(mu))) for mu in parts
        )
    stanley = 0
    cycles_by_class = {ct: len(ct) for ct in parts}
    for q in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)):
        for mu in parts:
            lhs = Fraction(sum(sizes[c] * table[mu, c] * q ** cycles_by_class[c] for c in parts), order)
            rhs = math.prod((q + cell.content) / cell.hook for cell in cell_annotations(mu))
            stanley = max(stanley, abs(lhs - rhs))
    return [
        _row("characters", "first orthogonality", float(first), 0),
        _row("characters", "column orthogonality", float(column), 0),
        _row("characters", "transposition ratio matches character / dimension", float(ratio), 0),
        _row("characters", "q-cycle class sums match content product", float(stanley), 0),
    ]


def sample_models(n: int) -> list[NoiseModel]:
    pbar = [0.0] * (n + 1)
    pbar[0], pbar[min(2, n)] = 0.6, 0.4
    return [
        SymmetricNoise(n=n, pbar=tuple(pbar)),
        HeatKernelNoise(n=n, t=1.0),
        HeatKernelNoise(n=n, t=2.0),
        CayleyMallowsNoise(n=n, theta=0.5),
        CayleyMallowsNoise(n=n, theta=1.2),
    ]


def noise_suite(n: int) -> list[VerifyRow]:
    n = min(n, 6)
    rows = []
    for K in sample_models(n):
        gap = max(abs(m.value - multiplier_by_character_sum(K, m.mu)) for m in spectrum(K))
        rows.append(_row("noise", f"{K.model} multipliers match character sums ({_describe(K)})", gap, 1e-9))
    return rows


def fourier_suite(n: int) -> list[VerifyRow]:
    n = min(n, 6)
    rows = []
    for K in sample_models(n):
        for ell in range(1, min(2, n - 1) + 1):
            matrix = noise_matrix(K, ell)
            allowed = np.asarray([multiplier(K, mu).value for mu in up_set(hook_partition(n, ell))])
            eig = eigenvalues(matrix)
            membership = float(np.abs(eig[:, None] - allowed[None, :]).min(axis=1).max())
            sigma_gap = abs(smallest_singular_value(matrix.entries) - min_multiplier_up(K, ell))
            rows.append(_row("fourier", f"spectrum in up-set multipliers ({_describe(K)}, ell={ell})", membership))
            rows.append(_row("fourier", f"sigma_min equals min multiplier ({_describe(K)}, ell={ell})", sigma_gap))
        lhs, rhs = class_parseval(noise_pmf_exact(K))
        rows.append(_row("fourier", f"class-function Parseval ({_describe(K)})", abs(lhs - rhs), 1e-10))
    return rows


def lowerbound_suite(n: int) -> list[VerifyRow]:
    pair = build_hard_pair(2, 1)
    rows = [_row("lowerbound", "hard pair supports are disjoint", abs(1.0 - tv_distance(pair.f1, pair.f2)), 1e-12)]
    for theta in (math.log(1.05), math.log(1.1), math.log(1.2)):
        result = verify_separation(pair, theta)
        rows.append(_row("lowerbound", f"tv <= 2 eta^t at eta={result.eta:.3f}", max(result.tv - result.bound, 0.0)))
    zero = verify_separation(pair, 0.0)
    rows.append(_row("lowerbound", "noisy pair coincides at theta = ln j", zero.tv, 1e-10))
    return rows


def _describe(K: NoiseModel) -> str:
    if isinstance(K, SymmetricNoise):
        return f"pbar={list(K.pbar)}"
    if isinstance(K, HeatKernelNoise):
        return f"t={K.t}"
    return f"theta={K.theta}"


SUITES: dict[str, Callable[[int], list[VerifyRow]]] = {
    "sn_core": sn_core_suite,
    "partitions": partitions_suite,
    "characters": characters_suite,
    "noise": noise_suite,
    "fourier": fourier_suite,
    "lowerbound": lowerbound_suite,
}


def run_suite(name: str, n: int) -> list[VerifyRow]:
    suites = SUITES if name == "all" else {name: SUITES[name]}
    rows = []
    for suite_name, suite in suites.items():
        logger.info(f"[Verify] Running {suite_name} at n={n}")
        rows.extend(suite(n))
    return rows
