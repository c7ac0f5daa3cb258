"""CLI interface for mdsipm."""

from .commands import (
    cmd_bench,
    cmd_solve,
    cmd_verify,
    report_error,
    resolve_format,
    solver_options,
)
from .log import configure_logging, log_level_from_env
from .parser import create_parser, parse_sizes, run_cli

__all__ = [
    "cmd_bench",
    "cmd_solve",
    "cmd_verify",
    "configure_logging",
    "create_parser",
    "log_level_from_env",
    "parse_sizes",
    "report_error",
    "resolve_format",
    "run_cli",
    "solver_options",
]
