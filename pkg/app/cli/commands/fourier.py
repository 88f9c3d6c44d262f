"""`rankmix fourier`: exact hook Fourier coefficient of a mixture or a noise model."""
from app.cli import log_run
from app.models.config import ExperimentConfig
from app.services.fourier_service import exact_fourier, noise_matrix
from app.utils.io import load_mixture, load_noise, matrix_rows, write_rows
from app.utils.messages import MSG


def register(subparsers) -> None:
    parser = subparsers.add_parser("fourier", help="Dump the exact ell-way marginal matrix")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--mixture")
    source.add_argument("--noise")
    parser.add_argument("--ell", type=int, required=True)
    parser.add_argument("--out")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    log_run(
        ExperimentConfig(command="fourier", mixture=args.mixture, ell=args.ell, outputs={"out": args.out})
    )
    if args.mixture:
        matrix = exact_fourier(load_mixture(args.mixture), args.ell)
    elif args.noise:
        matrix = noise_matrix(load_noise(args.noise), args.ell)
    else:
        raise ValueError(MSG.MISSING_INPUT.format(what="--mixture or --noise"))
    header, rows = matrix_rows(matrix)
    write_rows(header, rows, args.out, stdout)
    return 0
