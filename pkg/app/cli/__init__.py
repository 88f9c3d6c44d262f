"""Command-line front end: one module per subcommand under app.cli.commands."""
import logging
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from app.models.config import ExperimentConfig
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


def package_version(name: str) -> str:
    try:
        return version(name)
    except PackageNotFoundError:
        return "unknown"


def log_run(config: ExperimentConfig) -> None:
    """Seed, versions and the full configuration, logged before any work."""
    logger.info(MSG.RUN_HEADER.format(command=config.command, seed=config.seed))
    logger.info(
        MSG.RUN_VERSIONS.format(
            numpy=package_version("numpy"), scipy=package_version("scipy"), pydantic=package_version("pydantic")
        )
    )
    logger.info(MSG.RUN_CONFIG.format(config=config.model_dump_json()))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
