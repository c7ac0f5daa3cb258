"""Central finite-difference checks of model derivatives."""

import logging
from dataclasses import dataclass

import numpy as np

from mdsipm.linalg import (
    INF_BOUND,
    BackendSelector,
    DenseMatrix,
    LinearAlgebra,
    SequentialLinearAlgebra,
    TripletMatrix,
    Vector,
)

from .constants import FD_POINTS, FD_STEP
from .problem import MdsNlpProblem

logger = logging.getLogger(__name__)

_reference = SequentialLinearAlgebra(BackendSelector())


@dataclass(frozen=True, slots=True)
class DerivativeReport:
    """Largest relative errors seen over all sampled points."""

    points: int
    gradient: float
    jacobian_g: float
    jacobian_h: float
    hessian: float

    @property
    def worst(self) -> float:
        """Largest error of any kind."""
        return max(self.gradient, self.jacobian_g, self.jacobian_h, self.hessian)

    def passed(self, tol: float) -> bool:
        """True if every error is within ``tol``."""
        return self.worst <= tol


def _rel_err(approx: Vector | float, exact: Vector | float) -> float:
    diff = np.abs(np.asarray(approx) - np.asarray(exact))
    scale = np.maximum(1.0, np.abs(np.asarray(exact)))
    return float(np.max(diff / scale)) if diff.size else 0.0


def _interior_sample(rng: np.random.Generator, lo: Vector, up: Vector) -> Vector:
    """Draw from the middle 80% of finite boxes, within 1 of one-sided bounds."""
    u = rng.uniform(0.1, 0.9, lo.size)
    has_lo = lo > -INF_BOUND
    has_up = up < INF_BOUND
    x = rng.uniform(-1.0, 1.0, lo.size)
    both = has_lo & has_up
    x[both] = lo[both] + u[both] * (up[both] - lo[both])
    only_lo = has_lo & ~has_up
    x[only_lo] = lo[only_lo] + u[only_lo]
    only_up = has_up & ~has_lo
    x[only_up] = up[only_up] - u[only_up]
    return x


def _apply(
    la: LinearAlgebra, Jd: DenseMatrix, Js: TripletMatrix, v_d: Vector, v_s: Vector
) -> Vector:
    x = np.concatenate((v_s, v_d))
    return la.mds_times_vec(0.0, np.zeros(Jd.rows), 1.0, Js, Jd, x)


def _apply_t(
    la: LinearAlgebra, Jd: DenseMatrix, Js: TripletMatrix, y: Vector
) -> tuple[Vector, Vector]:
    t_d = la.dense_gemv(0.0, np.zeros(Jd.cols), 1.0, Jd, y, transpose=True)
    t_s = la.triplet_times_vec(0.0, np.zeros(Js.cols), 1.0, Js, y, transpose=True)
    return t_d, t_s


def _lagrangian_gradient(
    la: LinearAlgebra,
    p: MdsNlpProblem,
    x_d: Vector,
    x_s: Vector,
    y_g: Vector,
    y_h: Vector,
) -> Vector:
    grad_d, grad_s = p.gradient(x_d, x_s)
    Jdg, Jsg, Jdh, Jsh = p.jacobians(x_d, x_s)
    gd, gs = _apply_t(la, Jdg, Jsg, y_g)
    hd, hs = _apply_t(la, Jdh, Jsh, y_h)
    return np.concatenate((grad_d + gd + hd, grad_s + gs + hs))


def check_derivatives(
    p: MdsNlpProblem,
    seed: int = 0,
    points: int = FD_POINTS,
    *,
    linalg: LinearAlgebra | None = None,
) -> DerivativeReport:
    """Compare analytic derivatives of ``p`` with central differences.

    At each random interior point a random direction ``v`` and random
    multipliers are drawn. The directional derivatives of ``f``, ``g`` and
    ``h`` and the change of the Lagrangian gradient along ``v`` are compared
    with ``<grad f, v>``, ``J v`` and ``H v``. The step is
    ``FD_STEP * (1 + max|x|)``. Jacobian products go through the K2
    kernels of ``linalg`` (the sequential reference suite by default).

    Returns:
        The largest relative errors per derivative kind.
    """
    la = linalg or _reference
    rng = np.random.default_rng(seed)
    b = p.bounds
    d = p.dims
    worst = {"gradient": 0.0, "jacobian_g": 0.0, "jacobian_h": 0.0, "hessian": 0.0}

    for _ in range(points):
        x_d = _interior_sample(rng, b.xd_lo, b.xd_up)
        x_s = _interior_sample(rng, b.xs_lo, b.xs_up)
        v_d = rng.standard_normal(d.n_d)
        v_s = rng.standard_normal(d.n_s)
        y_g = rng.standard_normal(d.m_E)
        y_h = rng.standard_normal(d.m_I)
        scale = max(np.max(np.abs(x_d), initial=0.0), np.max(np.abs(x_s), initial=0.0))
        step = FD_STEP * (1.0 + scale)
        xp_d, xp_s = x_d + step * v_d, x_s + step * v_s
        xm_d, xm_s = x_d - step * v_d, x_s - step * v_s

        fd_f = (p.objective(xp_d, xp_s) - p.objective(xm_d, xm_s)) / (2 * step)
        grad_d, grad_s = p.gradient(x_d, x_s)
        exact_f = float(grad_d @ v_d + grad_s @ v_s)
        worst["gradient"] = max(worst["gradient"], _rel_err(fd_f, exact_f))

        (gp, hp), (gm, hm) = p.constraints(xp_d, xp_s), p.constraints(xm_d, xm_s)
        Jdg, Jsg, Jdh, Jsh = p.jacobians(x_d, x_s)
        worst["jacobian_g"] = max(
            worst["jacobian_g"],
            _rel_err((gp - gm) / (2 * step), _apply(la, Jdg, Jsg, v_d, v_s)),
        )
        worst["jacobian_h"] = max(
            worst["jacobian_h"],
            _rel_err((hp - hm) / (2 * step), _apply(la, Jdh, Jsh, v_d, v_s)),
        )

        fd_hv = (
            _lagrangian_gradient(la, p, xp_d, xp_s, y_g, y_h)
            - _lagrangian_gradient(la, p, xm_d, xm_s, y_g, y_h)
        ) / (2 * step)
        Qdd, qss = p.hessian(x_d, x_s, y_g, y_h)
        Qv_d = Qdd.array @ v_d if d.n_d else np.zeros(0)
        exact_hv = np.concatenate((Qv_d, qss * v_s))
        worst["hessian"] = max(worst["hessian"], _rel_err(fd_hv, exact_hv))

    report = DerivativeReport(points=points, **worst)
    logger.debug("derivative check for %s: %s", p.name, report)
    return report
