"""One-shot evaluation of every model quantity at a point."""

from dataclasses import dataclass

import numpy as np

from mdsipm.errors import DimensionError, EvalError
from mdsipm.linalg import DenseMatrix, TripletMatrix, Vector

from .problem import MdsNlpProblem


@dataclass(frozen=True, slots=True)
class EvalBundle:
    """Model quantities at one primal-dual point."""

    f: float
    grad_d: Vector
    grad_s: Vector
    g_val: Vector
    h_val: Vector
    Jdg: DenseMatrix
    Jsg: TripletMatrix
    Jdh: DenseMatrix
    Jsh: TripletMatrix
    Qdd: DenseMatrix
    qss: Vector


def _require(name: str, vec: Vector, size: int) -> None:
    if vec.shape != (size,):
        msg = f"{name} has shape {vec.shape}, expected ({size},)"
        raise DimensionError(msg)


def _finite(component: str, values: Vector | float) -> None:
    if not np.all(np.isfinite(values)):
        raise EvalError(component)


def eval_all(
    p: MdsNlpProblem, x_d: Vector, x_s: Vector, y_g: Vector, y_h: Vector
) -> EvalBundle:
    """Evaluate objective, constraints and derivative blocks of ``p``.

    The Hessian blocks are those of the Lagrangian ``f + y_g^T g + y_h^T h``.

    Raises:
        DimensionError: If a point or multiplier vector has the wrong size,
            or an evaluator returns a block of the wrong shape.
        EvalError: If any quantity is NaN or Inf; ``component`` names it.
    """
    d = p.dims
    _require("x_d", x_d, d.n_d)
    _require("x_s", x_s, d.n_s)
    _require("y_g", y_g, d.m_E)
    _require("y_h", y_h, d.m_I)

    f = p.objective(x_d, x_s)
    _finite("f", f)
    grad_d, grad_s = p.gradient(x_d, x_s)
    _finite("grad_d", grad_d)
    _finite("grad_s", grad_s)
    g_val, h_val = p.constraints(x_d, x_s)
    _finite("g", g_val)
    _finite("h", h_val)
    Jdg, Jsg, Jdh, Jsh = p.jacobians(x_d, x_s)
    _finite("Jdg", Jdg.data)
    _finite("Jsg", Jsg.v)
    _finite("Jdh", Jdh.data)
    _finite("Jsh", Jsh.v)
    Qdd, qss = p.hessian(x_d, x_s, y_g, y_h)
    _finite("Qdd", Qdd.data)
    _finite("qss", qss)

    expected = {
        "Jdg": (Jdg.shape, (d.m_E, d.n_d)),
        "Jsg": (Jsg.shape, (d.m_E, d.n_s)),
        "Jdh": (Jdh.shape, (d.m_I, d.n_d)),
        "Jsh": (Jsh.shape, (d.m_I, d.n_s)),
        "Qdd": (Qdd.shape, (d.n_d, d.n_d)),
    }
    for name, (got, want) in expected.items():
        if got != want:
            msg = f"{name} has shape {got}, expected {want}"
            raise DimensionError(msg)
    for name, vec, size in (
        ("grad_d", grad_d, d.n_d),
        ("grad_s", grad_s, d.n_s),
        ("g", g_val, d.m_E),
        ("h", h_val, d.m_I),
        ("qss", qss, d.n_s),
    ):
        _require(name, vec, size)

    return EvalBundle(
        f=float(f),
        grad_d=grad_d,
        grad_s=grad_s,
        g_val=g_val,
        h_val=h_val,
        Jdg=Jdg,
        Jsg=Jsg,
        Jdh=Jdh,
        Jsh=Jsh,
        Qdd=Qdd,
        qss=qss,
    )
