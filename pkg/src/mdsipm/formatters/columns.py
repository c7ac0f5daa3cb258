"""Column specifications for record tables."""

from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import StrEnum, auto
from typing import Any, Self

from mdsipm.bench import BenchRecord, SuiteResult
from mdsipm.ipm import IterationRecord


class ClipSide(StrEnum):
    """Which side to truncate when clipping."""

    LEFT = auto()  # Keep right portion
    RIGHT = auto()  # Keep left portion


class RecordKind(StrEnum):
    """Kinds of records the formatters know how to lay out."""

    BENCH = auto()
    ITERATION = auto()
    SUITE = auto()


def clip(s: str, max_len: int, side: ClipSide = ClipSide.RIGHT) -> str:
    """Truncate string, adding ellipsis on clipped side.

    Args:
        s: Input string to potentially clip.
        max_len: Maximum length of returned string, including ellipsis.
        side: Which side to truncate when clipping.

    Returns:
        The original string if it fits within ``max_len``; otherwise a clipped
        version with an ellipsis on the clipped side.
    """
    if len(s) <= max_len:
        return s
    match side:
        case ClipSide.LEFT:
            return f"...{s[-(max_len - 3) :]}"
        case ClipSide.RIGHT:
            return f"{s[: max_len - 3]}..."


@dataclass(frozen=True, slots=True)
class ColumnSpec[R]:
    """Specification for a table column over records of type ``R``."""

    key: str
    header: str
    get: Callable[[R], Any]
    fmt: Callable[[Any], str] = str
    max_width: int | None = None
    clip_side: ClipSide = ClipSide.RIGHT

    def extract(self, record: R) -> str:
        """Extract and format value from a record.

        Args:
            record: Record to extract the value from.

        Returns:
            The formatted value, clipped with an ellipsis if it exceeds
            ``max_width``.
        """
        formatted = self.fmt(self.get(record))
        if self.max_width and len(formatted) > self.max_width:
            return clip(formatted, self.max_width, self.clip_side)
        return formatted

    def with_width(self, width: int, side: ClipSide = ClipSide.RIGHT) -> Self:
        """Return a copy with specified max width and clip side.

        Args:
            width: Maximum width for the column output.
            side: Which side to truncate when clipping.

        Returns:
            A new ``ColumnSpec`` with ``max_width`` and ``clip_side`` set.
        """
        return replace(self, max_width=width, clip_side=side)


def _fmt_sci(v: float) -> str:
    return f"{v:.3e}"


def _fmt_ms(v: float) -> str:
    return f"{1e3 * v:.3f}"


def _fmt_pct(v: float) -> str:
    return f"{100 * v:.1f}"


def _fmt_speedup(r: BenchRecord) -> str:
    return f"{r.speedup:.2f}x" if r.full_dim else "-"


BENCH_COLUMNS: dict[str, ColumnSpec[BenchRecord]] = {
    "k": ColumnSpec("k", "k", lambda r: r.k),
    "status": ColumnSpec("status", "Status", lambda r: r.status, max_width=18),
    "iterations": ColumnSpec("iterations", "Iters", lambda r: r.iterations),
    "dim": ColumnSpec("dim", "Dim", lambda r: r.dim),
    "avg_iter_time": ColumnSpec(
        "avg_iter_time", "ms/iter", lambda r: r.avg_iter_time, _fmt_ms
    ),
    "avg_t_K1": ColumnSpec("avg_t_K1", "K1 ms", lambda r: r.avg_t_K1, _fmt_ms),
    "avg_t_K2": ColumnSpec("avg_t_K2", "K2 ms", lambda r: r.avg_t_K2, _fmt_ms),
    "avg_t_K3": ColumnSpec("avg_t_K3", "K3 ms", lambda r: r.avg_t_K3, _fmt_ms),
    "avg_t_K4": ColumnSpec("avg_t_K4", "K4 ms", lambda r: r.avg_t_K4, _fmt_ms),
    "k4_fraction": ColumnSpec("k4_fraction", "K4 %", lambda r: r.k4_fraction, _fmt_pct),
    "full_dim": ColumnSpec("full_dim", "Full dim", lambda r: r.full_dim),
    "speedup": ColumnSpec("speedup", "Speedup", lambda r: r, _fmt_speedup),
}

ITERATION_COLUMNS: dict[str, ColumnSpec[IterationRecord]] = {
    "iter": ColumnSpec("iter", "Iter", lambda r: r.iter),
    "objective": ColumnSpec("objective", "Objective", lambda r: r.objective, _fmt_sci),
    "mu": ColumnSpec("mu", "mu", lambda r: r.mu, _fmt_sci),
    "theta": ColumnSpec("theta", "theta", lambda r: r.trial_theta, _fmt_sci),
    "phi": ColumnSpec("phi", "phi", lambda r: r.trial_phi, _fmt_sci),
    "alpha_primal": ColumnSpec(
        "alpha_primal", "alpha_p", lambda r: r.alpha_primal, _fmt_sci
    ),
    "alpha_dual": ColumnSpec("alpha_dual", "alpha_d", lambda r: r.alpha_dual, _fmt_sci),
    "delta_w": ColumnSpec("delta_w", "delta_w", lambda r: r.delta_w, _fmt_sci),
    "inertia": ColumnSpec("inertia", "Inertia", lambda r: r.inertia),
    "branch": ColumnSpec("branch", "Accept", lambda r: r.branch),
    "t_total": ColumnSpec("t_total", "ms", lambda r: r.t_total, _fmt_ms),
}

SUITE_COLUMNS: dict[str, ColumnSpec[SuiteResult]] = {
    "name": ColumnSpec("name", "Suite", lambda s: s.name),
    "passed": ColumnSpec("passed", "Passed", lambda s: s.passed),
    "failed": ColumnSpec("failed", "Failed", lambda s: s.failed),
    "skipped": ColumnSpec("skipped", "Skipped", lambda s: s.skipped),
    "worst": ColumnSpec("worst", "Worst", lambda s: s.worst, _fmt_sci),
    "failures": ColumnSpec(
        "failures", "First failures", lambda s: ", ".join(s.failures[:3]), max_width=40
    ),
}

DEFAULT_BENCH_COLUMNS: tuple[str, ...] = (
    "k",
    "status",
    "iterations",
    "dim",
    "avg_iter_time",
    "avg_t_K1",
    "avg_t_K2",
    "avg_t_K3",
    "avg_t_K4",
    "k4_fraction",
)

DEFAULT_ITERATION_COLUMNS: tuple[str, ...] = tuple(ITERATION_COLUMNS)

DEFAULT_SUITE_COLUMNS: tuple[str, ...] = tuple(SUITE_COLUMNS)

COLUMN_SETS: dict[RecordKind, tuple[dict[str, ColumnSpec[Any]], tuple[str, ...]]] = {
    RecordKind.BENCH: (BENCH_COLUMNS, DEFAULT_BENCH_COLUMNS),
    RecordKind.ITERATION: (ITERATION_COLUMNS, DEFAULT_ITERATION_COLUMNS),
    RecordKind.SUITE: (SUITE_COLUMNS, DEFAULT_SUITE_COLUMNS),
}


def get_available_columns(kind: RecordKind = RecordKind.BENCH) -> list[str]:
    """Return list of available column keys.

    Args:
        kind: Record kind whose columns are listed.

    Returns:
        A list of keys for all available columns.
    """
    return list(COLUMN_SETS[kind][0])
