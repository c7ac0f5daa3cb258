"""Iterates, KKT blocks, solver state and result records."""

from dataclasses import dataclass, field, fields
from enum import StrEnum
from typing import Self

import numpy as np

from mdsipm.ldl import Inertia
from mdsipm.linalg import DenseMatrix, TripletMatrix, Vector

from .filter import Filter


@dataclass(frozen=True, slots=True)
class IteratePoint:
    """Primal variables, slacks and every multiplier of the barrier subproblem.

    The same container holds search directions. Bound duals of infinite
    bounds are exactly zero.
    """

    x_d: Vector
    x_s: Vector
    s: Vector
    y_g: Vector
    y_h: Vector
    z_lo_d: Vector
    z_up_d: Vector
    z_lo_s: Vector
    z_up_s: Vector
    v_lo: Vector
    v_up: Vector

    PRIMAL = ("x_d", "x_s", "s")
    MULTIPLIERS = ("y_g", "y_h")
    BOUND_DUALS = ("z_lo_d", "z_up_d", "z_lo_s", "z_up_s", "v_lo", "v_up")

    def step(self, direction: Self, alpha_primal: float, alpha_dual: float) -> Self:
        """Move primals and ``y`` by ``alpha_primal``, bound duals by ``alpha_dual``."""
        moved = {
            name: getattr(self, name)
            + (alpha_dual if name in self.BOUND_DUALS else alpha_primal)
            * getattr(direction, name)
            for name in _FIELD_NAMES
        }
        return type(self)(**moved)

    def with_values(self, **changes: Vector) -> Self:
        """Copy with some components replaced."""
        values = {name: getattr(self, name) for name in _FIELD_NAMES}
        values.update(changes)
        return type(self)(**values)

    def is_finite(self) -> bool:
        """True if every component is finite."""
        return all(np.all(np.isfinite(getattr(self, name))) for name in _FIELD_NAMES)


_FIELD_NAMES = tuple(f.name for f in fields(IteratePoint))


@dataclass(frozen=True, slots=True)
class BarrierDiagonals:
    """Barrier Hessian diagonals ``D_xs``, ``D_xd`` and ``D_h``."""

    d_xs: Vector
    d_xd: Vector
    dh: Vector


@dataclass(frozen=True, slots=True)
class KktResiduals:
    """Right-hand side of the 4x4 system plus the slack residual ``r_s``."""

    r_xs: Vector
    r_xd: Vector
    r_yg: Vector
    r_yh: Vector
    r_s: Vector


@dataclass(frozen=True, slots=True)
class KktSystem4:
    """Blocks of the uncondensed symmetric KKT system.

    Unknown order is ``(dx_s, dx_d, dy_g, dy_h)``. ``q_ss`` and ``Qdd`` already
    include the barrier diagonals and ``delta_w``.
    """

    q_ss: Vector
    Qdd: DenseMatrix
    Jsg: TripletMatrix
    Jsh: TripletMatrix
    Jdg: DenseMatrix
    Jdh: DenseMatrix
    dh: Vector
    r_xs: Vector
    r_xd: Vector
    r_yg: Vector
    r_yh: Vector
    delta_w: float
    delta_c: float

    @property
    def n_s(self) -> int:
        """Sparse block size."""
        return int(self.q_ss.size)

    @property
    def n_d(self) -> int:
        """Dense block size."""
        return self.Qdd.rows

    @property
    def m_E(self) -> int:
        """Equality count."""
        return int(self.r_yg.size)

    @property
    def m_I(self) -> int:
        """Inequality count."""
        return int(self.r_yh.size)


@dataclass(frozen=True, slots=True)
class CompressedKkt:
    """Condensed symmetric system over ``(dx_d, dy_g, dy_h)``."""

    M: DenseMatrix
    rhs: Vector
    n_d: int
    m_E: int
    m_I: int

    @property
    def dim(self) -> int:
        """Matrix dimension ``n_d + m_E + m_I``."""
        return self.M.rows

    def split(self, sol: Vector) -> tuple[Vector, Vector, Vector]:
        """Cut a solution vector into ``(dx_d, dy_g, dy_h)``."""
        a = self.n_d
        b = a + self.m_E
        return sol[:a], sol[a:b], sol[b:]


@dataclass(slots=True)
class BarrierState:
    """Mutable state of one solve.

    Attributes:
        mu: Barrier parameter.
        iteration: Accepted iterations so far.
        filter: Filter of the current barrier subproblem.
        delta_w_last: Last nonzero primal regularization that was accepted.
        theta_max: Constraint violation above which trials are rejected.
        theta_min: Violation below which the Armijo branch may apply.
    """

    mu: float
    iteration: int = 0
    filter: Filter = field(default_factory=Filter)
    delta_w_last: float = 0.0
    theta_max: float = np.inf
    theta_min: float = 0.0


class SolveStatus(StrEnum):
    """Outcome of a solve."""

    OPTIMAL = "Optimal"
    MAX_ITER = "MaxIter"
    RESTORATION_NEEDED = "RestorationNeeded"
    SINGULAR_SYSTEM = "SingularSystem"
    EVAL_FAILURE = "EvalFailure"


class AcceptBranch(StrEnum):
    """Which acceptance test let a trial point through."""

    ARMIJO = "armijo"
    THETA = "theta"
    PHI = "phi"


@dataclass(frozen=True, slots=True)
class IterationRecord:
    """Log record of one accepted iteration.

    ``theta`` and ``phi`` describe the point the step started from; the
    ``trial_*`` fields the accepted point. Timings are wall-clock seconds.
    """

    iter: int
    mu: float
    theta: float
    phi: float
    alpha_primal: float
    alpha_dual: float
    delta_w: float
    delta_c: float
    inertia: Inertia
    t_K1: float
    t_K2: float
    t_K3: float
    t_K4: float
    t_total: float
    objective: float = 0.0
    e_mu: float = 0.0
    min_gap: float = np.inf
    min_dual: float = np.inf
    trial_theta: float = 0.0
    trial_phi: float = 0.0
    dphi: float = 0.0
    alpha_max: float = 1.0
    branch: AcceptBranch = AcceptBranch.THETA
    theta_min: float = 0.0
    theta_max: float = np.inf
    filter: tuple[tuple[float, float], ...] = ()
    delta_w_trials: tuple[float, ...] = ()
    dim: int = 0


@dataclass(frozen=True, slots=True)
class SolveResult:
    """What `solve` returns."""

    status: SolveStatus
    point: IteratePoint
    e_mu_final: float
    iterations: int
    records: tuple[IterationRecord, ...]
    objective: float = np.nan
    message: str = ""

    @property
    def ok(self) -> bool:
        """True for status Optimal."""
        return self.status is SolveStatus.OPTIMAL
