"""`rankmix lowerbound`: separation of the square-character pair under Mallows noise."""
import logging

from app.cli import log_run, make_rng
from app.models.config import ExperimentConfig
from app.services.lower_bound_service import build_hard_pair, distinguisher_accuracy, separation_sweep
from app.utils.io import write_rows

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("lowerbound", help="TV between the noisy hard pair for each theta")
    parser.add_argument("--t", type=int, required=True)
    parser.add_argument("--j", type=int, required=True)
    parser.add_argument("--theta", type=float, action="append", required=True, help="repeatable")
    parser.add_argument("--distinguish", type=int, metavar="N", help="also run a likelihood-ratio test on N samples")
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out")
    parser.set_defaults(handler=run)


def run(args, stdout) -> int:
    log_run(
        ExperimentConfig(
            command="lowerbound",
            seed=args.seed,
            outputs={"out": args.out},
            extra={"t": args.t, "j": args.j, "theta": args.theta, "distinguish": args.distinguish},
        )
    )
    pair = build_hard_pair(args.t, args.j)
    results, slope = separation_sweep(pair, args.theta)
    if slope is not None:
        logger.info(f"[LowerBound] log tv / log eta slope: {slope:.3f} (t={args.t})")

    header = ["theta", "eta", "multiplier", "tv", "bound", "pass"]
    rows = []
    rng = make_rng(args.seed)
    for r in results:
        row = [repr(r.theta), repr(r.eta), repr(r.multiplier), repr(r.tv), repr(r.bound),
               "pass" if r.passed else "fail"]
        if args.distinguish:
            row.append(repr(distinguisher_accuracy(pair, r.theta, args.distinguish, args.trials, rng)))
        rows.append(row)
    if args.distinguish:
        header.append("accuracy")
    write_rows(header, rows, args.out, stdout)
    return 0
