"""The mixed dense-sparse NLP interface.

A problem splits its variables into a dense block ``x_d`` and a sparse block
``x_s`` and is stated as::

    min  f(x_d, x_s)
    s.t. g(x_d, x_s) = g_E
         h_lo <= h(x_d, x_s) <= h_up
         xd_lo <= x_d <= xd_up,  xs_lo <= x_s <= xs_up

The interface has no cross-term Hessian blocks, and the sparse-sparse
Hessian of the Lagrangian is delivered as a nonnegative diagonal.
Bounds at or beyond ``INF_BOUND`` in magnitude are infinite.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from mdsipm.linalg import INF_BOUND, DenseMatrix, TripletMatrix, Vector


@dataclass(frozen=True, slots=True)
class ProblemDims:
    """Block sizes of an MDS problem."""

    n_d: int
    n_s: int
    m_E: int
    m_I: int

    @property
    def n(self) -> int:
        """Total variable count."""
        return self.n_d + self.n_s

    @property
    def m(self) -> int:
        """Total constraint count."""
        return self.m_E + self.m_I

    @property
    def compressed_dim(self) -> int:
        """Dimension of the condensed KKT matrix."""
        return self.n_d + self.m

    @property
    def full_dim(self) -> int:
        """Dimension of the uncondensed KKT matrix."""
        return self.n + self.m


@dataclass(frozen=True, slots=True)
class ProblemBounds:
    """Variable and inequality bounds plus the equality right-hand side."""

    xd_lo: Vector
    xd_up: Vector
    xs_lo: Vector
    xs_up: Vector
    h_lo: Vector
    h_up: Vector
    g_E: Vector


class MdsNlpProblem(ABC):
    """Base class for problems with mixed dense-sparse structure.

    Subclasses supply the evaluators; dimensions and bounds are fixed at
    construction. Evaluators must be deterministic and free of side effects.
    """

    name: str = "problem"

    def __init__(self, dims: ProblemDims, bounds: ProblemBounds) -> None:
        """Store dimensions and bounds."""
        self.dims = dims
        self.bounds = bounds

    @property
    def n_d(self) -> int:
        """Dense variable count."""
        return self.dims.n_d

    @property
    def n_s(self) -> int:
        """Sparse variable count."""
        return self.dims.n_s

    @property
    def m_E(self) -> int:
        """Equality count."""
        return self.dims.m_E

    @property
    def m_I(self) -> int:
        """Inequality count."""
        return self.dims.m_I

    @abstractmethod
    def objective(self, x_d: Vector, x_s: Vector) -> float:
        """Objective value."""

    @abstractmethod
    def gradient(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Objective gradient split as ``(grad_d, grad_s)``."""

    @abstractmethod
    def constraints(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Constraint bodies ``(g, h)``; ``g_E`` is not subtracted."""

    @abstractmethod
    def jacobians(
        self, x_d: Vector, x_s: Vector
    ) -> tuple[DenseMatrix, TripletMatrix, DenseMatrix, TripletMatrix]:
        """Jacobian blocks ``(Jdg, Jsg, Jdh, Jsh)``."""

    @abstractmethod
    def hessian(
        self, x_d: Vector, x_s: Vector, y_g: Vector, y_h: Vector
    ) -> tuple[DenseMatrix, Vector]:
        """Lagrangian Hessian blocks ``(Qdd, qss)``.

        The Lagrangian is ``f + y_g^T g + y_h^T h``; ``qss`` is the diagonal
        of its sparse-sparse block.
        """

    def starting_point(self) -> tuple[Vector, Vector]:
        """Default start: box midpoints, one unit inside one-sided bounds."""
        b = self.bounds
        return _midpoint(b.xd_lo, b.xd_up), _midpoint(b.xs_lo, b.xs_up)

    def __repr__(self) -> str:
        d = self.dims
        return (
            f"{type(self).__name__}({self.name!r}, n_d={d.n_d}, n_s={d.n_s}, "
            f"m_E={d.m_E}, m_I={d.m_I})"
        )


def _midpoint(lo: Vector, up: Vector) -> Vector:
    has_lo = lo > -INF_BOUND
    has_up = up < INF_BOUND
    x = np.zeros(lo.size)
    both = has_lo & has_up
    x[both] = 0.5 * (lo[both] + up[both])
    x[has_lo & ~has_up] = lo[has_lo & ~has_up] + 1.0
    x[has_up & ~has_lo] = up[has_up & ~has_lo] - 1.0
    return x
