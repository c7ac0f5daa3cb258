"""CLI command handlers."""

import argparse
import sys
from pathlib import Path

from rich import print  # pylint: disable=redefined-builtin
from rich.console import Console

from mdsipm.bench import (
    ERROR_STATUS,
    VerifyCaps,
    bench_sweep,
    format_host_line,
    get_host_info,
    verify_suite,
)
from mdsipm.bench.constants import DEFAULT_SIZES, FULL_SCALE_SIZES
from mdsipm.formatters import (
    DEFAULT_BENCH_COLUMNS,
    RecordKind,
    format_json,
    format_output,
)
from mdsipm.ipm import SolverOptions, SolveStatus, solve
from mdsipm.linalg import LinearAlgebra, backend_from_name, make_linear_algebra
from mdsipm.model import parse_problem_spec

from .constants import EXIT_FAILURE, EXIT_OK, SUFFIX_FORMATS

# Records are printed verbatim: no markup, no highlighting, no wrapping
_records_console = Console(highlight=False, soft_wrap=True)

COMPARE_COLUMNS = ("full_dim", "speedup")


def report_error(exc: Exception) -> None:
    """Print an error message to standard error."""
    print(f"[bold red]error:[/bold red] {exc}", file=sys.stderr)


def resolve_format(args: argparse.Namespace) -> str:
    """Pick the output format: ``--format``, else the ``--out`` suffix, else table.

    Returns:
        str: One of the format keys.
    """
    if args.format:
        return args.format
    if args.out:
        return SUFFIX_FORMATS.get(Path(args.out).suffix.lower(), "table")
    return "table"


def solver_options(args: argparse.Namespace) -> SolverOptions:
    """Default options with the flags that were given applied.

    Returns:
        SolverOptions: A validated copy.
    """
    changes = {
        name: value
        for name in ("tol", "max_iter", "mu0")
        if (value := getattr(args, name, None)) is not None
    }
    return SolverOptions().replace(**changes)


def _linalg(args: argparse.Namespace) -> LinearAlgebra:
    return make_linear_algebra(backend_from_name(args.backend))


def _columns(args: argparse.Namespace) -> list[str] | None:
    return args.columns.split(",") if args.columns else None


def _emit(text: str, args: argparse.Namespace) -> None:
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else f"{text}\n", encoding="utf-8")
        _summary(args, f"Wrote {path}")
    else:
        end = "" if text.endswith("\n") else "\n"
        _records_console.print(text, markup=False, end=end)


def _summary(args: argparse.Namespace, message: str) -> None:
    # Machine output owns stdout; the human summary moves to stderr
    machine = not args.out and resolve_format(args) in {"csv", "json"}
    print(message, file=sys.stderr if machine else sys.stdout)


def cmd_solve(args: argparse.Namespace) -> int:
    """Solve one problem command.

    Returns:
        int: Exit code (0 when the status is Optimal, 1 otherwise).
    """
    opts = solver_options(args)
    problem = parse_problem_spec(args.problem)
    dump_dir = Path(args.dump_kkt) if args.dump_kkt else None
    result = solve(problem, opts, linalg=_linalg(args), dump_dir=dump_dir)

    fmt = resolve_format(args)
    if fmt == "json":
        meta = {
            "problem": args.problem,
            "status": str(result.status),
            "iterations": result.iterations,
            "objective": result.objective,
            "kkt_error": result.e_mu_final,
        }
        text = format_json(result.records, meta=meta)
    else:
        text = format_output(result.records, fmt, RecordKind.ITERATION, _columns(args))
    _emit(text, args)

    color = "green" if result.status is SolveStatus.OPTIMAL else "red"
    _summary(
        args,
        f"Status: [{color}]{result.status}[/{color}] after {result.iterations} "
        f"iterations, objective {result.objective:.8e}, "
        f"KKT error {result.e_mu_final:.2e}",
    )
    if result.message:
        _summary(args, result.message)
    return EXIT_OK if result.ok else EXIT_FAILURE


def cmd_bench(args: argparse.Namespace) -> int:
    """Benchmark size sweep command.

    Returns:
        int: Exit code (0 when every size solved to Optimal, 1 otherwise).
    """
    sizes = args.sizes or (FULL_SCALE_SIZES if args.full_scale else DEFAULT_SIZES)
    opts = solver_options(args)
    host = get_host_info()
    _summary(args, f"Host: {format_host_line(host)}")

    records = bench_sweep(
        sizes, opts, linalg=_linalg(args), compare_full=args.compare_full
    )

    fmt = resolve_format(args)
    columns = _columns(args)
    if columns is None and args.compare_full:
        columns = [*DEFAULT_BENCH_COLUMNS, *COMPARE_COLUMNS]
    if fmt == "json":
        meta = {"host": host.as_dict(), "sizes": list(sizes), "tol": opts.tol}
        text = format_json(records, meta=meta)
    else:
        text = format_output(records, fmt, RecordKind.BENCH, columns)
    _emit(text, args)

    failed = [r.k for r in records if r.status != SolveStatus.OPTIMAL]
    if failed:
        errors = sum(r.status == ERROR_STATUS for r in records)
        _summary(
            args,
            f"[red]{len(failed)} size(s) not Optimal[/red] "
            f"({errors} raised): {', '.join(map(str, failed))}",
        )
        return EXIT_FAILURE
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Oracle verification suites command.

    Returns:
        int: Exit code (0 when every suite passed, 1 otherwise).
    """
    caps = VerifyCaps(max_block=args.max_block, max_ldl_n=args.max_ldl_n)
    report = verify_suite(args.seeds, caps, linalg=_linalg(args))
    if not report.suites:
        _summary(args, "No suites ran.")
        return EXIT_OK

    fmt = resolve_format(args)
    _emit(format_output(report.suites, fmt, RecordKind.SUITE, _columns(args)), args)
    if report.ok:
        _summary(args, f"[green]All {len(report.suites)} suites passed.[/green]")
        return EXIT_OK
    names = ", ".join(s.name for s in report.suites if not s.ok)
    _summary(args, f"[red]{report.failed} failure(s)[/red] in: {names}")
    return EXIT_FAILURE
