"""`rankmix verify`: run identity suites and report max deviations."""
from app.cli import log_run
from app.models.config import ExperimentConfig
from app.services.verify_service import SUITES, run_suite
from app.utils.io import write_lines
from app.utils.report import build_verify_report


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Check exact identities")
    parser.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--out")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    log_run(ExperimentConfig(command="verify", ell=None, extra={"suite": args.suite, "n": args.n}))
    lines, passed = build_verify_report(run_suite(args.suite, args.n))
    write_lines(lines, args.out, stdout)
    return 0 if passed else 2
