"""`rankmix spectrum`: Fourier multipliers of a noise model."""
from app.cli import log_run
from app.models.config import ExperimentConfig
from app.services.noise_service import spectrum, sufficiency_report
from app.utils.io import dump_json, load_noise, write_lines, write_rows


def register(subparsers) -> None:
    parser = subparsers.add_parser("spectrum", help="Print noise multipliers per partition")
    parser.add_argument("--noise", required=True)
    parser.add_argument("--ell", type=int, help="restrict to partitions dominating the ell-hook")
    parser.add_argument("--report", type=int, metavar="K", help="print the identifiability report for sparsity K")
    parser.add_argument("--out")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    K = load_noise(args.noise)
    log_run(ExperimentConfig(command="spectrum", noise=K.model_dump(), ell=args.ell, outputs={"out": args.out}))
    if args.report is not None:
        write_lines([dump_json(sufficiency_report(K, args.report))], args.out, stdout)
        return 0
    rows = [(str(m.mu), repr(m.value)) for m in spectrum(K, args.ell)]
    write_rows(["partition", "multiplier"], rows, args.out, stdout)
    return 0
