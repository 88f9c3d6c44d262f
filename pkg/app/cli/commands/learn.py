"""
`rankmix learn`: recover a sparse mixture.

Three modes:
  --oracle FILE             exact marginals of the given mixture
  --noise + --samples FILE  marginals estimated from noisy samples
  --noise + --mixture       simulation: draw --n-samples per trial, report TV per trial
"""
import logging
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from app.cli import log_run
from app.models.config import EstimatorConfig, ExperimentConfig, LearnConfig
from app.services.distribution_service import tv_distance
from app.services.learner_service import learn_with_report, support_mismatches
from app.services.noise_service import sample_noisy
from app.utils.io import dump_json, dump_mixture, load_mixture, load_noise, read_permutations, write_lines, write_rows
from app.utils.messages import MSG
from app.utils.report import build_learn_report

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("learn", help="Learn a sparse mixture of rankings")
    parser.add_argument("--noise", help="noise JSON file (sampled and simulation modes)")
    parser.add_argument("--samples", help="noisy samples, one permutation per line")
    parser.add_argument("--oracle", help="mixture JSON answered exactly (oracle mode)")
    parser.add_argument("--mixture", help="ground-truth mixture JSON for the report / simulation")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--n-samples", type=int, default=200_000, help="samples per simulated trial")
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--median", action="store_true", help="median-amplified marginal estimates (sampled modes)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="learned mixture JSON (or trial CSV in simulation mode)")
    parser.add_argument("--report", help="run report JSON")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    cfg = LearnConfig(k=args.k, epsilon=args.epsilon)
    estimator_cfg = EstimatorConfig(tau=cfg.delta_conf, median=args.median)
    noise = load_noise(args.noise) if args.noise else None
    truth = load_mixture(args.mixture) if args.mixture else None
    log_run(
        ExperimentConfig(
            command="learn",
            seed=args.seed,
            noise=noise.model_dump() if noise else None,
            mixture=args.oracle or args.mixture,
            samples=args.n_samples if args.samples is None else None,
            outputs={"out": args.out, "report": args.report},
            extra={**cfg.model_dump(), "median": args.median, "trials": args.trials, "jobs": args.jobs},
        )
    )

    if args.oracle:
        result = learn_with_report(load_mixture(args.oracle), noise, cfg)
    elif args.samples and noise is not None:
        samples = read_permutations(args.samples)
        result = learn_with_report(samples, noise, cfg, np.random.default_rng(args.seed), estimator_cfg)
    elif noise is not None and truth is not None:
        return _simulate(args, noise, truth, cfg, estimator_cfg, stdout)
    else:
        raise ValueError(MSG.MISSING_INPUT.format(what="--oracle, or --noise with --samples or --mixture"))

    mismatches = support_mismatches(result, truth) if truth is not None else None
    if mismatches:
        logger.warning(MSG.SUPPORT_MISMATCH.format(stages=mismatches))
    write_lines([dump_mixture(result.mixture)], args.out, stdout)
    report = build_learn_report(result, truth, mismatches)
    if args.report:
        write_lines([dump_json(report)], args.report, stdout)
    else:
        logger.info(f"[Learn] Report: {dump_json(report)}")
    return 0


def _run_trial(payload) -> tuple[int, int, float]:
    trial, seed_seq, noise, truth, cfg, estimator_cfg, n_samples = payload
    rng = np.random.default_rng(seed_seq)
    samples = sample_noisy(noise, truth, rng, n_samples)
    result = learn_with_report(samples, noise, cfg, rng, estimator_cfg)
    tv = tv_distance(truth, result.mixture)
    logger.info(MSG.LEARN_TRIAL.format(trial=trial, atoms=len(result.mixture), tv=f"{tv:.4f}"))
    return trial, len(result.mixture), tv


def _simulate(args, noise, truth, cfg: LearnConfig, estimator_cfg: EstimatorConfig, stdout) -> int:
    seeds = np.random.SeedSequence(args.seed).spawn(args.trials)
    payloads = [(i, seeds[i], noise, truth, cfg, estimator_cfg, args.n_samples) for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_run_trial, payloads))
    else:
        rows = [_run_trial(p) for p in payloads]
    write_rows(
        ["trial", "atoms", "tv"],
        [(t, a, repr(tv)) for t, a, tv in rows],
        args.out,
        stdout,
    )
    return 0
