"""Output format functions for bench, iteration and verification records."""

import csv
import io
import json
from collections.abc import Mapping, Sequence
from dataclasses import asdict, fields
from enum import StrEnum
from typing import Any

from tabulate import tabulate

from mdsipm.bench import BenchRecord
from mdsipm.errors import MalformedRecordError
from mdsipm.ipm import IterationRecord

from .columns import COLUMN_SETS, RecordKind

# Per-iteration CSV layout; inertia is split into its three counts
ITERATION_CSV_FIELDS = (
    "iter",
    "mu",
    "theta",
    "phi",
    "alpha_primal",
    "alpha_dual",
    "delta_w",
    "delta_c",
    "inertia_pos",
    "inertia_zero",
    "inertia_neg",
    "t_K1",
    "t_K2",
    "t_K3",
    "t_K4",
    "t_total",
)

BENCH_CSV_FIELDS = tuple(f.name for f in fields(BenchRecord))

EMPTY_MESSAGE = "No records."


def get_rows(
    records: Sequence[Any],
    kind: RecordKind,
    columns: Sequence[str] | None = None,
) -> tuple[list[str], list[list[str]]]:
    """Extract headers and formatted rows from records.

    Args:
        records: Records to extract rows from.
        kind: Which column set applies.
        columns: Optional ordered list of column keys to include.

    Returns:
        A tuple of (headers, rows), where headers is a list of column headers and
        rows is a list of formatted string rows.
    """
    specs_by_key, defaults = COLUMN_SETS[kind]
    cols = columns or defaults
    specs = [specs_by_key[c] for c in cols if c in specs_by_key]
    headers = [s.header for s in specs]
    rows = [[s.extract(r) for s in specs] for r in records]
    return headers, rows


def format_table(
    records: Sequence[Any],
    kind: RecordKind,
    columns: Sequence[str] | None = None,
) -> str:
    """Format records as ASCII table.

    Returns:
        A formatted ASCII table string, or a message if there are no records.
    """
    if not records:
        return EMPTY_MESSAGE
    headers, rows = get_rows(records, kind, columns)
    return tabulate(rows, headers=headers, tablefmt="simple_outline")


def format_markdown(
    records: Sequence[Any],
    kind: RecordKind,
    columns: Sequence[str] | None = None,
) -> str:
    """Format records as a GitHub-flavored Markdown table.

    Returns:
        A formatted Markdown table string, or a message if there are no records.
    """
    if not records:
        return EMPTY_MESSAGE
    headers, rows = get_rows(records, kind, columns)
    return tabulate(rows, headers=headers, tablefmt="pipe")


def _jsonable(value: object) -> object:
    match value:
        case StrEnum():
            return str(value)
        case tuple() | list():
            return [_jsonable(v) for v in value]
        case dict():
            return {k: _jsonable(v) for k, v in value.items()}
        case _:
            return value


def format_json(
    records: Sequence[Any], meta: Mapping[str, object] | None = None
) -> str:
    """Format dataclass records as JSON.

    Args:
        records: Records to serialize (every field is included).
        meta: Optional metadata; when given, the output is an object with
            ``meta`` and ``records`` keys instead of a bare list.

    Returns:
        A pretty-printed JSON string.
    """
    items = [_jsonable(asdict(r)) for r in records]
    payload: object = items if meta is None else {"meta": dict(meta), "records": items}
    return json.dumps(payload, indent=2)


def _iteration_row(r: IterationRecord) -> list[object]:
    values = {
        **{name: getattr(r, name) for name in ITERATION_CSV_FIELDS[:8]},
        "inertia_pos": r.inertia.pos,
        "inertia_zero": r.inertia.zero,
        "inertia_neg": r.inertia.neg,
        **{name: getattr(r, name) for name in ITERATION_CSV_FIELDS[11:]},
    }
    return [values[name] for name in ITERATION_CSV_FIELDS]


def format_csv(records: Sequence[Any], kind: RecordKind) -> str:
    """Format bench or iteration records as CSV.

    Floats are written with full precision so the file reads back exactly.

    Args:
        records: Records to format.
        kind: ``BENCH`` or ``ITERATION`` (suites use their table columns).

    Returns:
        A CSV string. If no records are provided, returns an empty string.
    """
    if not records:
        return ""
    output = io.StringIO()
    writer = csv.writer(output)
    match kind:
        case RecordKind.ITERATION:
            writer.writerow(ITERATION_CSV_FIELDS)
            writer.writerows(_iteration_row(r) for r in records)
        case RecordKind.BENCH:
            writer.writerow(BENCH_CSV_FIELDS)
            writer.writerows(
                [getattr(r, name) for name in BENCH_CSV_FIELDS] for r in records
            )
        case RecordKind.SUITE:
            headers, rows = get_rows(records, kind)
            writer.writerow(headers)
            writer.writerows(rows)
    return output.getvalue()


def read_bench_csv(text: str) -> list[BenchRecord]:
    """Parse CSV written by ``format_csv(records, RecordKind.BENCH)``.

    Returns:
        The records, in file order.

    Raises:
        MalformedRecordError: If the header or a value does not match the
            bench record layout.
    """
    if not text.strip():
        return []
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != BENCH_CSV_FIELDS:
        msg = f"unexpected bench CSV header: {reader.fieldnames}"
        raise MalformedRecordError(msg)
    types = {f.name: f.type for f in fields(BenchRecord)}
    converters = {int: int, float: float, str: str, "int": int, "float": float}
    records = []
    for line, row in enumerate(reader, start=2):
        try:
            values = {k: converters[types[k]](v) for k, v in row.items()}
        except (KeyError, TypeError, ValueError) as exc:
            msg = f"bad bench CSV value on line {line}: {exc}"
            raise MalformedRecordError(msg) from exc
        records.append(BenchRecord(**values))
    return records


def format_output(
    records: Sequence[Any],
    fmt: str,
    kind: RecordKind,
    columns: Sequence[str] | None = None,
) -> str:
    """Format records in the requested format.

    Args:
        records: Records to format.
        fmt: Output format key (e.g., "json", "csv", "md"/"markdown").
        kind: Which column set and CSV layout applies.
        columns: Optional ordered list of column keys to include (table/markdown).

    Returns:
        The formatted output string.
    """
    match fmt:
        case "json":
            return format_json(records)
        case "csv":
            return format_csv(records, kind)
        case "md" | "markdown":
            return format_markdown(records, kind, columns)
        case _:
            return format_table(records, kind, columns)
