"""
Stage-wise recovery of a sparse mixture of rankings from marginal queries.

Stage ell extends the surviving (ell-1)-prefixes by every value whose 1-way
marginal at position ell is large, fits weights to the junta marginals of
the candidates with a linear program, and prunes light prefixes. After
stage n the surviving full rankings get a final LP fit.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import linprog

from app.config import get_settings
from app.models.config import EstimatorConfig, LearnConfig
from app.models.mixture import DensePmf, SparseRankingMixture
from app.models.noise import NoiseModel
from app.models.permutation import Permutation
from app.services.estimator_service import sample_budget
from app.services.fourier_service import hook_dimension
from app.services.junta_service import correlation_bound
from app.services.noise_service import min_multiplier_up
from app.services.oracle_service import ExactMarginalOracle, MarginalOracle, SampledMarginalOracle
from app.utils.errors import (
    CandidateOverflowError,
    InfeasibleError,
    NoiseUnidentifiableError,
    SupportOverflowError,
)
from app.utils.messages import MSG

logger = logging.getLogger(__name__)

Prefix = tuple[int, ...]


@dataclass
class StageState:
    ell: int
    support: list[Prefix]
    weights: dict[Prefix, float]

    @classmethod
    def initial(cls) -> "StageState":
        return cls(ell=0, support=[()], weights={(): 1.0})


@dataclass(frozen=True)
class Constraint:
    positions: tuple[int, ...]
    values: tuple[int, ...]
    target: float
    members: tuple[int, ...]  # indices of the candidates agreeing with `values` on `positions`


@dataclass
class StageProgram:
    candidates: list[Prefix]
    constraints: list[Constraint]
    unrealized: list[Constraint]
    slack: float


@dataclass
class LearningPlan:
    n: int
    k: int
    epsilon: float
    max_len: int
    stage_j_max: int
    final_j_max: int
    lp_slack: float
    sigma_min: dict[int, float] = field(default_factory=dict)
    budgets: dict[int, int] = field(default_factory=dict)


@dataclass
class LearnResult:
    mixture: SparseRankingMixture
    stages: list[StageState]
    plan: LearningPlan
    slack: float
    seconds: float
    samples: int = 0


# ==================== STAGE LP ====================

def build_stage_program(
    candidates: Sequence[Prefix], oracle: MarginalOracle, slack: float, j_max: int
) -> StageProgram:
    """Junta constraints for every position set J with |J| <= j_max and every value tuple realized on J."""
    candidates = list(candidates)
    ell = len(candidates[0])
    constraints, unrealized = [], []
    for size in range(1, min(j_max, ell) + 1):
        for positions in combinations(range(1, ell + 1), size):
            groups: dict[tuple[int, ...], list[int]] = {}
            for idx, x in enumerate(candidates):
                groups.setdefault(tuple(x[p - 1] for p in positions), []).append(idx)
            for values, members in sorted(groups.items()):
                target = oracle.query(positions, values)
                constraints.append(Constraint(positions, values, target, tuple(members)))
            if size == 1:
                for value in range(1, oracle.n + 1):
                    if (value,) in groups:
                        continue
                    target = oracle.query(positions, (value,))
                    if target > slack:
                        unrealized.append(Constraint(positions, (value,), target, ()))
    return StageProgram(candidates, constraints, unrealized, slack)


def solve_stage_program(program: StageProgram) -> dict[Prefix, float]:
    """
    Feasible point of the slack program with the least total absolute deviation.

    Variables are the candidate weights s followed by one deviation u_c per
    constraint: minimize sum u subject to |beta_c - A_c s| <= u_c <= slack.
    """
    candidates = program.candidates
    if len(candidates) == 1:
        return {candidates[0]: 1.0}
    if program.unrealized:
        worst = max(program.unrealized, key=lambda c: c.target)
        raise InfeasibleError(
            MSG.LP_INFEASIBLE.format(
                slack=program.slack, detail=f"unrealized value {worst.values} at {worst.positions}: {worst.target:.3e}"
            )
        )
    m, count = len(candidates), len(program.constraints)
    incidence = np.zeros((count, m))
    targets = np.empty(count)
    for row, constraint in enumerate(program.constraints):
        incidence[row, list(constraint.members)] = 1.0
        targets[row] = constraint.target
    identity = np.eye(count)
    a_ub = np.block([[incidence, -identity], [-incidence, -identity]])
    b_ub = np.concatenate([targets, -targets])
    a_eq = np.concatenate([np.ones(m), np.zeros(count)])[None, :]
    cost = np.concatenate([np.zeros(m), np.ones(count)])
    bounds = [(0, None)] * m + [(0, program.slack)] * count
    result = linprog(
        cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0], bounds=bounds, method=get_settings().lp_method
    )
    if result.status != 0:
        raise InfeasibleError(MSG.LP_INFEASIBLE.format(slack=program.slack, detail=result.message))
    weights = np.clip(result.x[:m], 0.0, None)
    weights /= weights.sum()
    return dict(zip(candidates, weights.tolist()))


def replay_constraints(program: StageProgram, weights: dict[Prefix, float]) -> float:
    """Largest amount by which `weights` exceeds the slack on any emitted constraint (0 when all hold)."""
    values = [weights.get(x, 0.0) for x in program.candidates]
    worst = 0.0
    for constraint in program.constraints:
        fitted = math.fsum(values[i] for i in constraint.members)
        worst = max(worst, abs(constraint.target - fitted) - program.slack)
    for constraint in program.unrealized:
        worst = max(worst, constraint.target - program.slack)
    return max(worst, 0.0)


def one_stage_lp(
    candidates: Sequence[Prefix],
    oracle: MarginalOracle,
    slack: float,
    j_max: int,
    max_candidates: Optional[int] = None,
) -> dict[Prefix, float]:
    if slack < oracle.delta:
        raise ValueError(MSG.SLACK_BELOW_DELTA.format(slack=slack, delta=oracle.delta))
    if max_candidates is not None and len(candidates) > max_candidates:
        raise CandidateOverflowError(MSG.CANDIDATE_OVERFLOW.format(count=len(candidates), cap=max_candidates))
    program = build_stage_program(candidates, oracle, slack, j_max)
    return solve_stage_program(program)


# ==================== STAGES ====================

def default_slack(cfg: LearnConfig, n: int) -> float:
    """epsilon * B(k) / 8, so that the recovered weights are within epsilon/4 in l1."""
    if cfg.lp_slack is not None:
        return cfg.lp_slack
    return cfg.epsilon * correlation_bound(cfg.k, n, cfg.log_k) / 8


def support_stage(
    state: StageState,
    oracle: MarginalOracle,
    cfg: LearnConfig,
    j_max: Optional[int] = None,
    slack: Optional[float] = None,
) -> StageState:
    ell = state.ell + 1
    threshold = cfg.epsilon / 2
    heavy_values = [t for t in range(1, oracle.n + 1) if oracle.query((ell,), (t,)) >= threshold]
    candidates = sorted(x + (t,) for x in state.support for t in heavy_values if t not in x)
    if not candidates:
        raise InfeasibleError(MSG.NO_CANDIDATES.format(ell=ell, threshold=threshold))

    slack = slack if slack is not None else max(default_slack(cfg, oracle.n), oracle.delta)
    weights = one_stage_lp(candidates, oracle, slack, min(j_max or cfg.stage_j_max, ell), cfg.candidate_cap)

    prune = cfg.epsilon / 4
    kept = [x for x in candidates if weights[x] > prune]
    if not kept:
        raise InfeasibleError(MSG.EMPTY_AFTER_PRUNING.format(ell=ell, threshold=prune))
    if len(kept) > cfg.k:
        raise SupportOverflowError(MSG.SUPPORT_OVERFLOW.format(ell=ell, count=len(kept), k=cfg.k))
    total = math.fsum(weights[x] for x in kept)
    logger.info(f"[Learner] Stage {ell}: {len(candidates)} candidates, kept {len(kept)}")
    return StageState(ell=ell, support=kept, weights={x: weights[x] / total for x in kept})


# ==================== ASSEMBLY ====================

def plan_learning(
    K: Optional[NoiseModel], cfg: LearnConfig, n: int, tau: float = 0.05, sampled: bool = False
) -> LearningPlan:
    """Tuple lengths, LP slack, noise conditioning and per-length sample budgets for one run."""
    max_len = min(n - 1, cfg.stage_j_max) if sampled else n
    plan = LearningPlan(
        n=n,
        k=cfg.k,
        epsilon=cfg.epsilon,
        max_len=max_len,
        stage_j_max=min(cfg.stage_j_max, max_len),
        final_j_max=min(cfg.last_j_max, max_len),
        lp_slack=default_slack(cfg, n),
    )
    if K is not None:
        for s in range(1, min(max_len, n - 1) + 1):
            sigma = min_multiplier_up(K, s)
            plan.sigma_min[s] = sigma
            if sigma > 0:
                plan.budgets[s] = sample_budget(plan.lp_slack, tau, hook_dimension(n, s), sigma)
    return plan


def _as_oracle(source) -> Optional[MarginalOracle]:
    if isinstance(source, MarginalOracle):
        return source
    if isinstance(source, (SparseRankingMixture, DensePmf)):
        return ExactMarginalOracle(source)
    return None


def learn_with_report(
    source: Union[MarginalOracle, SparseRankingMixture, DensePmf, Sequence[Permutation], np.ndarray],
    K: Optional[NoiseModel],
    cfg: LearnConfig,
    rng: Optional[np.random.Generator] = None,
    estimator_cfg: Optional[EstimatorConfig] = None,
) -> LearnResult:
    started = time.perf_counter()
    oracle = _as_oracle(source)
    samples = 0
    if oracle is None:
        if K is None:
            raise ValueError(MSG.SAMPLES_NEED_NOISE)
        estimator_cfg = estimator_cfg or EstimatorConfig(tau=cfg.delta_conf)
        plan = plan_learning(K, cfg, K.n, estimator_cfg.tau, sampled=True)
        if plan.max_len >= 1:
            sigma = min_multiplier_up(K, plan.max_len)
            if sigma < estimator_cfg.sigma_min_floor:
                raise NoiseUnidentifiableError(
                    MSG.NOISE_UNIDENTIFIABLE.format(ell=plan.max_len, value=sigma, floor=estimator_cfg.sigma_min_floor)
                )
            oracle = SampledMarginalOracle.from_samples(source, K, plan.max_len, estimator_cfg, rng)
        samples = len(source)
    else:
        plan = plan_learning(K, cfg, oracle.n)

    n = plan.n
    if oracle is None or n == 1:
        mixture = SparseRankingMixture.from_atoms([(Permutation.identity(n), 1.0)])
        return LearnResult(mixture, [], plan, 0.0, time.perf_counter() - started, samples)

    slack = max(plan.lp_slack, oracle.delta)
    state = StageState.initial()
    stages = []
    for _ in range(n):
        state = support_stage(state, oracle, cfg, j_max=plan.stage_j_max, slack=slack)
        stages.append(state)

    weights = one_stage_lp(state.support, oracle, slack, min(plan.final_j_max, n), cfg.candidate_cap)
    kept = [(Permutation(x), w) for x, w in weights.items() if w > cfg.epsilon / 4]
    total = math.fsum(w for _, w in kept)
    mixture = SparseRankingMixture.from_atoms([(p, w / total) for p, w in kept])
    seconds = time.perf_counter() - started
    logger.info(MSG.LEARN_SUMMARY.format(atoms=len(mixture), seconds=seconds, samples=samples))
    return LearnResult(mixture, stages, plan, slack, seconds, samples)


def learn(
    source: Union[MarginalOracle, SparseRankingMixture, DensePmf, Sequence[Permutation], np.ndarray],
    K: Optional[NoiseModel],
    cfg: LearnConfig,
    rng: Optional[np.random.Generator] = None,
    estimator_cfg: Optional[EstimatorConfig] = None,
) -> SparseRankingMixture:
    return learn_with_report(source, K, cfg, rng, estimator_cfg).mixture


def prefix_support(f: SparseRankingMixture, ell: int) -> list[Prefix]:
    return sorted({perm.image[:ell] for perm in f.support()})


def support_mismatches(result: LearnResult, truth: SparseRankingMixture) -> list[int]:
    """Stages whose surviving prefixes are not exactly the prefix support of the truth."""
    return [s.ell for s in result.stages if sorted(s.support) != prefix_support(truth, s.ell)]
