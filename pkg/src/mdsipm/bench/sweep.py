"""Problem-size sweeps with per-kernel-class timing."""

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Self

from mdsipm.errors import EmptyInputError, MdsIpmError
from mdsipm.ipm import (
    SolveResult,
    SolverOptions,
    assemble_kkt4,
    build_diagonals,
    compress,
    full_kkt_matrix,
    initialize,
    kkt_residuals,
    solve,
)
from mdsipm.ldl import factorize
from mdsipm.linalg import DenseMatrix, LinearAlgebra
from mdsipm.model import eval_all, synthetic_problem

from .constants import FACTOR_REPEATS

logger = logging.getLogger(__name__)

ERROR_STATUS = "Error"


@dataclass(frozen=True, slots=True)
class BenchRecord:
    """Per-iteration averages of one synthetic solve.

    Attributes:
        k: Problem size.
        status: Solve status, or ``"Error"`` if the solve raised.
        iterations: Accepted iterations.
        dim: Dimension of the factorized condensed matrix.
        avg_iter_time: Mean wall time per iteration in seconds.
        avg_t_K1: Mean vector-kernel time per iteration.
        avg_t_K2: Mean matrix-vector time per iteration.
        avg_t_K3: Mean fused-assembly time per iteration.
        avg_t_K4: Mean factorization and solve time per iteration.
        k4_fraction: ``avg_t_K4 / avg_iter_time``.
        full_dim: Dimension of the uncondensed system (0 if not compared).
        t_factor_full: Best factorization time of the uncondensed system.
        t_factor_compressed: Best factorization time of the condensed system.
    """

    k: int
    status: str
    iterations: int
    dim: int
    avg_iter_time: float
    avg_t_K1: float
    avg_t_K2: float
    avg_t_K3: float
    avg_t_K4: float
    k4_fraction: float
    full_dim: int = 0
    t_factor_full: float = 0.0
    t_factor_compressed: float = 0.0

    @classmethod
    def from_result(cls, k: int, result: SolveResult) -> Self:
        """Average the iteration records of ``result``."""
        records = result.records
        count = len(records)
        dim = records[0].dim if records else 0

        def mean(name: str) -> float:
            return sum(getattr(r, name) for r in records) / count if count else 0.0

        avg_iter = mean("t_total")
        avg_k4 = mean("t_K4")
        return cls(
            k=k,
            status=str(result.status),
            iterations=result.iterations,
            dim=dim,
            avg_iter_time=avg_iter,
            avg_t_K1=mean("t_K1"),
            avg_t_K2=mean("t_K2"),
            avg_t_K3=mean("t_K3"),
            avg_t_K4=avg_k4,
            k4_fraction=min(1.0, avg_k4 / avg_iter) if avg_iter > 0 else 0.0,
        )

    @classmethod
    def failed(cls, k: int) -> Self:
        """Placeholder for a size whose solve raised."""
        return cls(k, ERROR_STATUS, 0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    @property
    def speedup(self) -> float:
        """Full over condensed factorization time (0 if not compared)."""
        if self.t_factor_compressed <= 0:
            return 0.0
        return self.t_factor_full / self.t_factor_compressed


def _best_time(matrix: DenseMatrix, method: str) -> float:
    best = float("inf")
    for _ in range(FACTOR_REPEATS):
        start = time.perf_counter()
        factorize(matrix, method)
        best = min(best, time.perf_counter() - start)
    return best


def compare_factorizations(
    k: int, opts: SolverOptions | None = None
) -> tuple[int, float, int, float]:
    """Time one factorization of the condensed and of the full KKT matrix.

    Both matrices are built at the starting point of ``synthetic_problem(k)``
    and factorized with the same routine; each time is the best of a few runs.

    Returns:
        ``(dim, t_compressed, full_dim, t_full)``.
    """
    opts = opts or SolverOptions()
    p = synthetic_problem(k)
    pt = initialize(p, opts)
    bundle = eval_all(p, pt.x_d, pt.x_s, pt.y_g, pt.y_h)
    diagonals = build_diagonals(p, pt)
    residuals = kkt_residuals(p, pt, bundle, opts.mu0, diagonals)
    k4 = assemble_kkt4(bundle, diagonals, residuals, 0.0, 0.0)
    compressed = compress(k4).M
    full = full_kkt_matrix(k4)
    t_compressed = _best_time(compressed, opts.linear_solver)
    t_full = _best_time(full, opts.linear_solver)
    logger.info(
        "k=%d: factor %d-dim in %.4fs vs %d-dim in %.4fs",
        k,
        compressed.rows,
        t_compressed,
        full.rows,
        t_full,
    )
    return compressed.rows, t_compressed, full.rows, t_full


def bench_sweep(
    sizes: Sequence[int],
    opts: SolverOptions | None = None,
    *,
    linalg: LinearAlgebra | None = None,
    compare_full: bool = False,
) -> list[BenchRecord]:
    """Solve ``synthetic_problem(k)`` for every size and average the timings.

    Sizes run one after another. A size whose solve raises is logged and
    recorded with status ``"Error"``; the sweep goes on.

    Args:
        sizes: Problem sizes ``k``.
        opts: Solver options; timing is forced on.
        linalg: Kernel suite passed to every solve.
        compare_full: Also time condensed against full factorization.

    Returns:
        One record per size, in input order.

    Raises:
        EmptyInputError: If ``sizes`` is empty.
    """
    if not sizes:
        msg = "bench needs at least one problem size"
        raise EmptyInputError(msg)
    opts = (opts or SolverOptions()).replace(timing=True)
    records: list[BenchRecord] = []
    for k in sizes:
        try:
            result = solve(synthetic_problem(k), opts, linalg=linalg)
            record = BenchRecord.from_result(k, result)
            if compare_full:
                _, t_compressed, full_dim, t_full = compare_factorizations(k, opts)
                record = replace(
                    record,
                    full_dim=full_dim,
                    t_factor_full=t_full,
                    t_factor_compressed=t_compressed,
                )
        except MdsIpmError:
            logger.exception("bench size k=%d failed", k)
            record = BenchRecord.failed(k)
        logger.info(
            "k=%d: %s in %d iterations, %.4fs/iter, K4 %.0f%%",
            k,
            record.status,
            record.iterations,
            record.avg_iter_time,
            100 * record.k4_fraction,
        )
        records.append(record)
    return records


def timing_overhead(k: int, opts: SolverOptions | None = None) -> float:
    """Wall-time ratio of a timed solve over an untimed one (same problem).

    Returns:
        ``t_timed / t_untimed``.
    """
    opts = opts or SolverOptions()
    walls = []
    for timing in (True, False):
        start = time.perf_counter()
        solve(synthetic_problem(k), opts.replace(timing=timing))
        walls.append(time.perf_counter() - start)
    return walls[0] / walls[1]
