"""`rankmix estimate`: marginal matrix of the hidden mixture from noisy samples."""
from app.cli import log_run, make_rng
from app.models.config import EstimatorConfig, ExperimentConfig
from app.services.estimator_service import estimate_from_config
from app.utils.io import load_noise, matrix_rows, read_permutations, write_rows


def register(subparsers) -> None:
    parser = subparsers.add_parser("estimate", help="Estimate the ell-way marginal matrix from noisy samples")
    parser.add_argument("--noise", required=True)
    parser.add_argument("--samples", required=True, help="one permutation per line")
    parser.add_argument("--ell", type=int, required=True)
    parser.add_argument("--delta", type=float, default=0.05)
    parser.add_argument("--tau", type=float, default=0.05)
    parser.add_argument("--mode", choices=["exact", "empirical"], default="exact")
    parser.add_argument("--strict", action="store_true", help="fail when the sample budget is not met")
    parser.add_argument("--median", action="store_true", help="entrywise median over disjoint sample batches")
    parser.add_argument("--repetitions", type=int, help="batch count for --median (default ceil(8 ln(1/tau)))")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    K = load_noise(args.noise)
    samples = read_permutations(args.samples)
    cfg = EstimatorConfig(
        delta=args.delta,
        tau=args.tau,
        noise_matrix_mode=args.mode,
        strict=args.strict,
        median=args.median,
        repetitions=args.repetitions,
    )
    log_run(
        ExperimentConfig(
            command="estimate",
            seed=args.seed,
            noise=K.model_dump(),
            samples=len(samples),
            ell=args.ell,
            outputs={"out": args.out},
            extra=cfg.model_dump(),
        )
    )
    matrix = estimate_from_config(samples, K, args.ell, cfg, make_rng(args.seed))
    header, rows = matrix_rows(matrix)
    write_rows(header, rows, args.out, stdout)
    return 0
