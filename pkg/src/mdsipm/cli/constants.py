"""Constants for the command-line interface."""

import logging

# Environment variable holding the log level
LOG_ENV_VAR = "MDS_IPM_LOG"

# Accepted values of LOG_ENV_VAR; unset means warnings only
LOG_LEVELS = {"debug": logging.DEBUG, "info": logging.INFO}
DEFAULT_LOG_LEVEL = logging.WARNING

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1  # non-Optimal solve, failed verify suite
EXIT_USAGE = 2  # bad flags, problem spec or environment (argparse uses 2 too)

# Output formats; the ones a file suffix can select
FORMATS = ("table", "md", "csv", "json")
SUFFIX_FORMATS = {".csv": "csv", ".json": "json", ".md": "md"}

DEFAULT_PROBLEM = "synthetic:10"

# Colors of the help output
HELP_STYLES = {
    "prog": "#98f641",
    "args": "#54ebdd",
    "groups": "#98f641",
    "metavar": "#7af0e5",
    "default": "#888888",
}
