"""Logging setup for the command line."""

import logging
import os

from rich.console import Console
from rich.logging import RichHandler

from mdsipm.errors import ConfigError

from .constants import DEFAULT_LOG_LEVEL, LOG_ENV_VAR, LOG_LEVELS

ROOT_LOGGER = "mdsipm"


def log_level_from_env() -> int:
    """Read the log level from ``MDS_IPM_LOG``.

    Returns:
        int: A ``logging`` level; WARNING when the variable is unset or empty.

    Raises:
        ConfigError: If the variable holds anything but ``debug`` or ``info``.
    """
    raw = os.environ.get(LOG_ENV_VAR, "").strip().lower()
    if not raw:
        return DEFAULT_LOG_LEVEL
    try:
        return LOG_LEVELS[raw]
    except KeyError:
        known = "|".join(LOG_LEVELS)
        msg = f"{LOG_ENV_VAR}={raw!r} is not one of {known}"
        raise ConfigError(msg) from None


def configure_logging() -> logging.Logger:
    """Attach a stderr ``RichHandler`` to the package logger.

    Calling it again replaces the handler instead of stacking a second one.

    Returns:
        logging.Logger: The configured ``mdsipm`` logger.
    """
    level = log_level_from_env()
    logger = logging.getLogger(ROOT_LOGGER)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(
        console=Console(stderr=True), show_path=False, rich_tracebacks=True
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
