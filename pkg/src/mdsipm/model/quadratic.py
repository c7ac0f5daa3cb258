"""Convex quadratic objective with linear constraints in MDS form."""

import numpy as np

from mdsipm.linalg import (
    BackendSelector,
    DenseMatrix,
    SequentialLinearAlgebra,
    TripletMatrix,
    Vector,
)

from .problem import MdsNlpProblem, ProblemBounds, ProblemDims

_kernels = SequentialLinearAlgebra(BackendSelector())


class QuadraticMdsProblem(MdsNlpProblem):
    """``f = 1/2 x_d^T H_d x_d + c_d^T x_d + 1/2 sum q_s x_s^2 + c_s^T x_s + f0``.

    Constraints are ``g = Adg x_d + Asg x_s`` and ``h = Adh x_d + Ash x_s``,
    so all constraint Hessians vanish and the Lagrangian Hessian is constant.
    """

    def __init__(
        self,
        name: str,
        *,
        H_d: DenseMatrix,
        c_d: Vector,
        q_s: Vector,
        c_s: Vector,
        Adg: DenseMatrix,
        Asg: TripletMatrix,
        Adh: DenseMatrix,
        Ash: TripletMatrix,
        bounds: ProblemBounds,
        f0: float = 0.0,
    ) -> None:
        """Store the quadratic data; dimensions follow from the blocks."""
        dims = ProblemDims(
            n_d=c_d.size, n_s=c_s.size, m_E=Adg.rows, m_I=Adh.rows
        )
        super().__init__(dims, bounds)
        self.name = name
        self.H_d = H_d
        self.c_d = c_d
        self.q_s = q_s
        self.c_s = c_s
        self.Adg = Adg
        self.Asg = Asg
        self.Adh = Adh
        self.Ash = Ash
        self.f0 = f0

    def objective(self, x_d: Vector, x_s: Vector) -> float:
        """Objective value."""
        quad_d = 0.5 * float(x_d @ (self.H_d.array @ x_d)) if x_d.size else 0.0
        quad_s = 0.5 * float(np.dot(self.q_s * x_s, x_s))
        return quad_d + float(self.c_d @ x_d) + quad_s + float(self.c_s @ x_s) + self.f0

    def gradient(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Objective gradient ``(H_d x_d + c_d, q_s * x_s + c_s)``."""
        grad_d = _kernels.dense_gemv(1.0, self.c_d, 1.0, self.H_d, x_d)
        return grad_d, self.q_s * x_s + self.c_s

    def constraints(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Linear constraint bodies."""
        x = np.concatenate((x_s, x_d))
        g = _kernels.mds_times_vec(0.0, np.zeros(self.m_E), 1.0, self.Asg, self.Adg, x)
        h = _kernels.mds_times_vec(0.0, np.zeros(self.m_I), 1.0, self.Ash, self.Adh, x)
        return g, h

    def jacobians(
        self, x_d: Vector, x_s: Vector
    ) -> tuple[DenseMatrix, TripletMatrix, DenseMatrix, TripletMatrix]:
        """Constant Jacobian blocks."""
        return self.Adg, self.Asg, self.Adh, self.Ash

    def hessian(
        self, x_d: Vector, x_s: Vector, y_g: Vector, y_h: Vector
    ) -> tuple[DenseMatrix, Vector]:
        """Constant Hessian blocks (constraints are linear)."""
        return self.H_d.copy(), self.q_s.copy()
