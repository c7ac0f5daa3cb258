"""Barrier subproblem: interior start, barrier objective, optimality error,
barrier diagonals and the barrier parameter update.

Inequalities are handled as ``h(x) - s = 0`` with ``h_lo <= s <= h_up``. Bound
gaps of infinite bounds are represented as ``inf`` so that ``mu / gap`` and
``z / gap`` vanish for them.
"""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from mdsipm.errors import InitError, NotInteriorError
from mdsipm.linalg import (
    INF_BOUND,
    BackendSelector,
    LinearAlgebra,
    ReduceKind,
    SequentialLinearAlgebra,
    Vector,
)
from mdsipm.model import EvalBundle, MdsNlpProblem

from .models import BarrierDiagonals, IteratePoint
from .options import SolverOptions

logger = logging.getLogger(__name__)

type Mask = npt.NDArray[np.bool_]

_reference = SequentialLinearAlgebra(BackendSelector())


@dataclass(frozen=True, slots=True)
class BoundBlock:
    """One bounded group of unknowns with its bound duals."""

    name: str
    x: Vector
    lo: Vector
    up: Vector
    z_lo: Vector
    z_up: Vector

    @property
    def has_lo(self) -> Mask:
        """Finite lower bounds."""
        return self.lo > -INF_BOUND

    @property
    def has_up(self) -> Mask:
        """Finite upper bounds."""
        return self.up < INF_BOUND

    def gaps(self, x: Vector | None = None) -> tuple[Vector, Vector]:
        """Distances to the lower and upper bounds (``inf`` where infinite).

        Raises:
            NotInteriorError: If a finite gap is not strictly positive.
        """
        x = self.x if x is None else x
        gap_lo = np.where(self.has_lo, x - self.lo, np.inf)
        gap_up = np.where(self.has_up, self.up - x, np.inf)
        if not (np.all(gap_lo > 0) and np.all(gap_up > 0)):
            msg = f"{self.name} is not strictly inside its bounds"
            raise NotInteriorError(msg)
        return gap_lo, gap_up


def bound_blocks(p: MdsNlpProblem, pt: IteratePoint) -> tuple[BoundBlock, ...]:
    """The three bounded groups ``x_d``, ``x_s`` and the slacks ``s``."""
    b = p.bounds
    return (
        BoundBlock("x_d", pt.x_d, b.xd_lo, b.xd_up, pt.z_lo_d, pt.z_up_d),
        BoundBlock("x_s", pt.x_s, b.xs_lo, b.xs_up, pt.z_lo_s, pt.z_up_s),
        BoundBlock("s", pt.s, b.h_lo, b.h_up, pt.v_lo, pt.v_up),
    )


def push_inside(x: Vector, lo: Vector, up: Vector, kappa_1: float) -> Vector:
    """Move ``x`` at least ``kappa_1 * max(1, |bound|)`` inside each finite bound.

    For two-sided boxes the push is capped at ``kappa_1`` times the width.

    Raises:
        InitError: If some box has ``lo >= up``.
    """
    has_lo = lo > -INF_BOUND
    has_up = up < INF_BOUND
    push_lo = kappa_1 * np.maximum(1.0, np.abs(lo))
    push_up = kappa_1 * np.maximum(1.0, np.abs(up))
    both = has_lo & has_up
    width = np.where(both, up - lo, np.inf)
    push_lo = np.where(both, np.minimum(push_lo, kappa_1 * width), push_lo)
    push_up = np.where(both, np.minimum(push_up, kappa_1 * width), push_up)
    lo_in = lo + push_lo
    up_in = up - push_up
    if np.any(both & ~(lo_in < up_in)):
        msg = "no strictly interior point exists for some bounded component"
        raise InitError(msg)
    x = np.where(has_lo, np.maximum(x, lo_in), x)
    return np.where(has_up, np.minimum(x, up_in), x)


def initialize(
    p: MdsNlpProblem,
    opts: SolverOptions,
    x0_d: Vector | None = None,
    x0_s: Vector | None = None,
) -> IteratePoint:
    """Build a strictly interior starting iterate.

    Primals are pushed inside their bounds, slacks are ``h(x)`` pushed inside
    ``[h_lo, h_up]``, bound duals are ``mu0 / gap`` and ``y`` starts at zero.

    Raises:
        InitError: If some bound pair admits no interior.
    """
    b = p.bounds
    start_d, start_s = p.starting_point()
    x_d = push_inside(start_d if x0_d is None else x0_d, b.xd_lo, b.xd_up, opts.kappa_1)
    x_s = push_inside(start_s if x0_s is None else x0_s, b.xs_lo, b.xs_up, opts.kappa_1)
    _, h = p.constraints(x_d, x_s)
    s = push_inside(h, b.h_lo, b.h_up, opts.kappa_1)

    def duals(x: Vector, lo: Vector, up: Vector) -> tuple[Vector, Vector]:
        block = BoundBlock("start", x, lo, up, x, x)
        gap_lo, gap_up = block.gaps()
        return opts.mu0 / gap_lo, opts.mu0 / gap_up

    z_lo_d, z_up_d = duals(x_d, b.xd_lo, b.xd_up)
    z_lo_s, z_up_s = duals(x_s, b.xs_lo, b.xs_up)
    v_lo, v_up = duals(s, b.h_lo, b.h_up)
    return IteratePoint(
        x_d=x_d,
        x_s=x_s,
        s=s,
        y_g=np.zeros(p.m_E),
        y_h=np.zeros(p.m_I),
        z_lo_d=z_lo_d,
        z_up_d=z_up_d,
        z_lo_s=z_lo_s,
        z_up_s=z_up_s,
        v_lo=v_lo,
        v_up=v_up,
    )


def barrier_phi(
    p: MdsNlpProblem, pt: IteratePoint, mu: float, f: float | None = None
) -> float:
    """Barrier objective ``f - mu * sum(log(gap))`` over every finite bound.

    Args:
        p: Problem.
        pt: Strictly interior iterate.
        mu: Barrier parameter.
        f: Objective value at ``pt`` if already known.

    Raises:
        NotInteriorError: If ``pt`` touches a finite bound.
    """
    value = p.objective(pt.x_d, pt.x_s) if f is None else f
    barrier = 0.0
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        barrier += float(np.sum(np.log(gap_lo[block.has_lo])))
        barrier += float(np.sum(np.log(gap_up[block.has_up])))
    return value - mu * barrier if mu else value


def barrier_slope(
    p: MdsNlpProblem,
    pt: IteratePoint,
    mu: float,
    bundle: EvalBundle,
    direction: IteratePoint,
    linalg: LinearAlgebra = _reference,
) -> float:
    """Directional derivative of the barrier objective along ``direction``."""
    grads = {"x_d": bundle.grad_d, "x_s": bundle.grad_s, "s": np.zeros(p.m_I)}
    slope = 0.0
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        grad = grads[block.name] - mu / gap_lo + mu / gap_up
        slope += linalg.vec_dot(grad, getattr(direction, block.name))
    return slope


def constraint_violation(
    p: MdsNlpProblem,
    g_val: Vector,
    h_val: Vector,
    s: Vector,
    linalg: LinearAlgebra = _reference,
) -> float:
    """``||g - g_E||_1 + ||h - s||_1``."""
    one = ReduceKind.ONE_NORM
    return linalg.vec_reduce(g_val - p.bounds.g_E, one) + linalg.vec_reduce(
        h_val - s, one
    )


def jacobian_transpose_times(
    bundle: EvalBundle, y_g: Vector, y_h: Vector, linalg: LinearAlgebra = _reference
) -> tuple[Vector, Vector]:
    """``(J_d^T y, J_s^T y)`` for the stacked constraint Jacobian."""
    t_d = linalg.dense_gemv(
        0.0, np.zeros(bundle.Jdg.cols), 1.0, bundle.Jdg, y_g, transpose=True
    )
    t_d = linalg.dense_gemv(1.0, t_d, 1.0, bundle.Jdh, y_h, transpose=True)
    t_s = linalg.triplet_times_vec(
        0.0, np.zeros(bundle.Jsg.cols), 1.0, bundle.Jsg, y_g, transpose=True
    )
    t_s = linalg.triplet_times_vec(1.0, t_s, 1.0, bundle.Jsh, y_h, transpose=True)
    return t_d, t_s


@dataclass(frozen=True, slots=True)
class KktError:
    """Scaled optimality error of the barrier subproblem and its parts."""

    e_mu: float
    dual_inf: float
    primal_inf: float
    compl_inf: float
    s_d: float
    s_c: float


def kkt_error(
    p: MdsNlpProblem,
    pt: IteratePoint,
    mu: float,
    bundle: EvalBundle,
    opts: SolverOptions | None = None,
    linalg: LinearAlgebra = _reference,
) -> KktError:
    """Optimality error ``E_mu`` of the barrier subproblem at ``pt``.

    Dual infeasibility is divided by ``s_d`` and complementarity by ``s_c``;
    both grow with the average multiplier magnitude once it exceeds ``s_max``.

    Raises:
        NotInteriorError: If ``pt`` touches a finite bound.
    """
    opts = opts or SolverOptions()
    inf_norm = ReduceKind.INF_NORM
    t_d, t_s = jacobian_transpose_times(bundle, pt.y_g, pt.y_h, linalg)
    stationarity = (
        bundle.grad_d + t_d - pt.z_lo_d + pt.z_up_d,
        bundle.grad_s + t_s - pt.z_lo_s + pt.z_up_s,
        -pt.y_h - pt.v_lo + pt.v_up,
    )
    dual_inf = max(linalg.vec_reduce(r, inf_norm) for r in stationarity)
    primal_inf = max(
        linalg.vec_reduce(bundle.g_val - p.bounds.g_E, inf_norm),
        linalg.vec_reduce(bundle.h_val - pt.s, inf_norm),
    )

    compl_inf = 0.0
    z_sum = 0.0
    n_bounds = 0
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        sides = ((gap_lo, block.z_lo, block.has_lo), (gap_up, block.z_up, block.has_up))
        for gap, z, mask in sides:
            residual = gap[mask] * z[mask] - mu
            compl_inf = max(compl_inf, linalg.vec_reduce(residual, inf_norm))
            z_sum += linalg.vec_reduce(z[mask], ReduceKind.ONE_NORM)
            n_bounds += int(np.count_nonzero(mask))

    y_sum = linalg.vec_reduce(pt.y_g, ReduceKind.ONE_NORM) + linalg.vec_reduce(
        pt.y_h, ReduceKind.ONE_NORM
    )
    count = p.dims.m + n_bounds
    s_d = max(opts.s_max, (y_sum + z_sum) / count) / opts.s_max if count else 1.0
    s_c = max(opts.s_max, z_sum / n_bounds) / opts.s_max if n_bounds else 1.0
    e_mu = max(dual_inf / s_d, primal_inf, compl_inf / s_c)
    return KktError(e_mu, dual_inf, primal_inf, compl_inf, s_d, s_c)


def build_diagonals(p: MdsNlpProblem, pt: IteratePoint) -> BarrierDiagonals:
    """Barrier diagonals ``z_lo / gap_lo + z_up / gap_up`` per bounded group.

    Entries with no finite bound are zero; ``D_h`` is positive everywhere
    because every inequality has a finite bound.

    Raises:
        NotInteriorError: If ``pt`` touches a finite bound.
    """
    diags = {}
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        diags[block.name] = block.z_lo / gap_lo + block.z_up / gap_up
    return BarrierDiagonals(d_xs=diags["x_s"], d_xd=diags["x_d"], dh=diags["s"])


def update_barrier(mu: float, e_mu: float, opts: SolverOptions) -> float:
    """Return the next barrier parameter (``mu`` itself if not yet due).

    The parameter drops to ``max(tol / 10, min(kappa_mu * mu, mu ** theta_mu))``
    once ``e_mu <= kappa_epsilon * mu``.
    """
    if e_mu > opts.kappa_epsilon * mu:
        return mu
    return max(opts.tol / 10.0, min(opts.kappa_mu * mu, mu**opts.theta_mu))
