"""Output formatters for bench, iteration and verification records."""

from .columns import (
    BENCH_COLUMNS,
    DEFAULT_BENCH_COLUMNS,
    DEFAULT_ITERATION_COLUMNS,
    DEFAULT_SUITE_COLUMNS,
    ITERATION_COLUMNS,
    SUITE_COLUMNS,
    ClipSide,
    ColumnSpec,
    RecordKind,
    clip,
    get_available_columns,
)
from .output import (
    BENCH_CSV_FIELDS,
    EMPTY_MESSAGE,
    ITERATION_CSV_FIELDS,
    format_csv,
    format_json,
    format_markdown,
    format_output,
    format_table,
    get_rows,
    read_bench_csv,
)

__all__ = [
    "BENCH_COLUMNS",
    "BENCH_CSV_FIELDS",
    "DEFAULT_BENCH_COLUMNS",
    "DEFAULT_ITERATION_COLUMNS",
    "DEFAULT_SUITE_COLUMNS",
    "EMPTY_MESSAGE",
    "ITERATION_COLUMNS",
    "ITERATION_CSV_FIELDS",
    "SUITE_COLUMNS",
    "ClipSide",
    "ColumnSpec",
    "RecordKind",
    "clip",
    "format_csv",
    "format_json",
    "format_markdown",
    "format_output",
    "format_table",
    "get_available_columns",
    "get_rows",
    "read_bench_csv",
]
