"""`rankmix sample`: draw noisy rankings from K * f."""
from app.cli import log_run, make_rng
from app.models.config import ExperimentConfig
from app.services.noise_service import sample_noisy
from app.utils.io import format_images, load_mixture, load_noise, write_lines


def register(subparsers) -> None:
    parser = subparsers.add_parser("sample", help="Draw noisy samples pi . sigma with pi ~ noise, sigma ~ mixture")
    parser.add_argument("--noise", required=True, help="noise JSON file")
    parser.add_argument("--mixture", required=True, help="mixture JSON file")
    parser.add_argument("--n-samples", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    K = load_noise(args.noise)
    f = load_mixture(args.mixture)
    log_run(
        ExperimentConfig(
            command="sample",
            seed=args.seed,
            noise=K.model_dump(),
            mixture=args.mixture,
            samples=args.n_samples,
            outputs={"out": args.out},
        )
    )
    images = sample_noisy(K, f, make_rng(args.seed), args.n_samples)
    write_lines(format_images(images), args.out, stdout)
    return 0
