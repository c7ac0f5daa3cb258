"""Filter line-search interior-point method with condensed KKT systems."""

from .barrier import (
    BoundBlock,
    KktError,
    barrier_phi,
    barrier_slope,
    bound_blocks,
    build_diagonals,
    constraint_violation,
    initialize,
    kkt_error,
    push_inside,
    update_barrier,
)
from .filter import Filter
from .inertia import CorrectedStep, solve_with_inertia_correction
from .kkt import (
    assemble_kkt4,
    complete_direction,
    compress,
    full_kkt_matrix,
    full_kkt_rhs,
    kkt_residuals,
    recover_sparse_step,
)
from .line_search import (
    LineSearchOutcome,
    acceptance_branch,
    fraction_to_boundary,
    line_search,
    replay_acceptance,
    safeguard_duals,
)
from .models import (
    AcceptBranch,
    BarrierDiagonals,
    BarrierState,
    CompressedKkt,
    IteratePoint,
    IterationRecord,
    KktResiduals,
    KktSystem4,
    SolveResult,
    SolveStatus,
)
from .options import SolverOptions
from .solver import solve
from .timing import KernelClass, KernelTimers, TimedLinearAlgebra

__all__ = [
    "AcceptBranch",
    "BarrierDiagonals",
    "BarrierState",
    "BoundBlock",
    "CompressedKkt",
    "CorrectedStep",
    "Filter",
    "IteratePoint",
    "IterationRecord",
    "KernelClass",
    "KernelTimers",
    "KktError",
    "KktResiduals",
    "KktSystem4",
    "LineSearchOutcome",
    "SolveResult",
    "SolveStatus",
    "SolverOptions",
    "TimedLinearAlgebra",
    "acceptance_branch",
    "assemble_kkt4",
    "barrier_phi",
    "barrier_slope",
    "bound_blocks",
    "build_diagonals",
    "complete_direction",
    "compress",
    "constraint_violation",
    "fraction_to_boundary",
    "full_kkt_matrix",
    "full_kkt_rhs",
    "initialize",
    "kkt_error",
    "kkt_residuals",
    "line_search",
    "push_inside",
    "recover_sparse_step",
    "replay_acceptance",
    "safeguard_duals",
    "solve",
    "solve_with_inertia_correction",
    "update_barrier",
]
