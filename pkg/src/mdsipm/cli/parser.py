"""CLI argument parser."""

import argparse
from importlib.metadata import version

from rich_argparse import RichHelpFormatter

from mdsipm.bench import VerifyCaps
from mdsipm.bench.constants import DEFAULT_SIZES, VERIFY_SEEDS
from mdsipm.errors import MdsIpmError
from mdsipm.formatters import RecordKind, get_available_columns
from mdsipm.linalg import BACKEND_NAMES

from .commands import cmd_bench, cmd_solve, cmd_verify, report_error
from .constants import DEFAULT_PROBLEM, EXIT_USAGE, FORMATS, HELP_STYLES
from .log import configure_logging

for _key, _value in HELP_STYLES.items():
    RichHelpFormatter.styles[f"argparse.{_key}"] = _value


def parse_sizes(text: str) -> tuple[int, ...]:
    """Parse a comma-separated list of positive problem sizes.

    Returns:
        tuple[int, ...]: Sizes in the given order.

    Raises:
        argparse.ArgumentTypeError: If an entry is not a positive integer.
    """
    try:
        sizes = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        msg = f"sizes must be comma-separated integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None
    if not sizes or min(sizes) < 1:
        msg = f"sizes must be positive, got {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return sizes


def _add_output_args(parser: argparse.ArgumentParser, kind: RecordKind) -> None:
    parser.add_argument(
        "-f",
        "--format",
        choices=FORMATS,
        default=None,
        help="Output format (default: from --out suffix, else table)",
    )
    parser.add_argument(
        "-o",
        "--out",
        type=str,
        metavar="PATH",
        help="Write records to PATH instead of standard output",
    )
    parser.add_argument(
        "-c",
        "--columns",
        type=str,
        metavar="COLS",
        help=f"Comma-separated table columns ({','.join(get_available_columns(kind))})",
    )


def _add_solver_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, help="Overall KKT tolerance")
    parser.add_argument(
        "--max-iter", type=int, metavar="N", help="Iteration limit per solve"
    )
    parser.add_argument("--mu0", type=float, help="Initial barrier parameter")
    parser.add_argument(
        "--backend",
        choices=tuple(BACKEND_NAMES),
        default="default",
        help="Kernel backend (default: default)",
    )


def create_parser() -> argparse.ArgumentParser:
    """Create CLI argument parser.

    Returns:
        argparse.ArgumentParser: Configured argument parser for the CLI.
    """
    parser = argparse.ArgumentParser(
        prog="mdsipm",
        description="Interior-point solver for mixed dense-sparse problems "
        "with condensed KKT systems.",
        formatter_class=RichHelpFormatter,
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"%(prog)s {version('mdsipm')}",
    )

    subparsers = parser.add_subparsers(dest="command", required=True, help="Commands")

    # Solve command
    solve_parser = subparsers.add_parser(
        "solve", help="Solve one problem", formatter_class=RichHelpFormatter
    )
    solve_parser.add_argument(
        "-p",
        "--problem",
        default=DEFAULT_PROBLEM,
        metavar="SPEC",
        help="synthetic:<k>, nonconvex:<k> or random:<seed>:<n_d>:<n_s>:<m_E>:<m_I> "
        f"(default: {DEFAULT_PROBLEM})",
    )
    _add_solver_args(solve_parser)
    solve_parser.add_argument(
        "--dump-kkt",
        type=str,
        metavar="DIR",
        help="Write the full and condensed KKT matrix of every iteration to DIR",
    )
    _add_output_args(solve_parser, RecordKind.ITERATION)
    solve_parser.set_defaults(func=cmd_solve)

    # Bench command
    bench_parser = subparsers.add_parser(
        "bench",
        help="Time synthetic problems over a size sweep",
        formatter_class=RichHelpFormatter,
    )
    bench_parser.add_argument(
        "-s",
        "--sizes",
        type=parse_sizes,
        default=None,
        metavar="K,K,...",
        help=f"Problem sizes (default: {','.join(map(str, DEFAULT_SIZES))})",
    )
    bench_parser.add_argument(
        "--full-scale",
        action="store_true",
        help="Sweep k = 2000..22000 step 4000 when --sizes is not given (slow)",
    )
    bench_parser.add_argument(
        "--compare-full",
        action="store_true",
        help="Also time factorizing the full system against the condensed one",
    )
    _add_solver_args(bench_parser)
    _add_output_args(bench_parser, RecordKind.BENCH)
    bench_parser.set_defaults(func=cmd_bench)

    # Verify command
    caps = VerifyCaps()
    verify_parser = subparsers.add_parser(
        "verify",
        help="Run the randomized oracle suites",
        formatter_class=RichHelpFormatter,
    )
    verify_parser.add_argument(
        "--seed",
        "--seeds",
        type=int,
        default=VERIFY_SEEDS,
        dest="seeds",
        metavar="N",
        help=f"Random instances per suite, seeds 0..N-1 (default: {VERIFY_SEEDS})",
    )
    verify_parser.add_argument(
        "--max-block",
        type=int,
        default=caps.max_block,
        metavar="N",
        help=f"Largest n_s and n_d of random KKT systems (default: {caps.max_block})",
    )
    verify_parser.add_argument(
        "--max-ldl-n",
        type=int,
        default=caps.max_ldl_n,
        metavar="N",
        help=f"Largest random LDL^T matrix (default: {caps.max_ldl_n})",
    )
    verify_parser.add_argument(
        "--backend",
        choices=tuple(BACKEND_NAMES),
        default="default",
        help="Kernel backend under test (default: default)",
    )
    _add_output_args(verify_parser, RecordKind.SUITE)
    verify_parser.set_defaults(func=cmd_verify)

    return parser


def run_cli(args: list[str] | None = None) -> int:
    """Run CLI with given args (or sys.argv if None).

    Returns:
        int: Exit status code: 0 on success, 1 when a solve is not Optimal
        or a verify suite fails, 2 for bad flags or configuration.
    """
    parser = create_parser()
    parsed = parser.parse_args(args)
    try:
        configure_logging()
        return parsed.func(parsed)
    except MdsIpmError as exc:
        report_error(exc)
        return EXIT_USAGE
