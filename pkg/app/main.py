"""Command-line application: builds the parser and registers every subcommand."""
import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

from app.cli.commands import COMMANDS
from app.config import get_settings
from app.utils.errors import InputFileError, RankMixError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankmix", description="Learn sparse mixtures of rankings from noisy samples"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_settings().log_level
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True
    )


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    stdout = stdout or sys.stdout
    try:
        return args.handler(args, stdout)
    except (OSError, InputFileError) as e:
        logger.error(MSG.IO_ERROR.format(error=e))
        return 1
    except (RankMixError, ValueError) as e:
        logger.error(MSG.CONTRACT_ERROR.format(error=e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
