"""Built-in problems and the ``kind:params`` problem selector."""

from enum import IntEnum

import numpy as np
import numpy.typing as npt

from mdsipm.errors import ConfigError
from mdsipm.linalg import INF_BOUND, DenseMatrix, TripletMatrix, Vector

from .constants import (
    RANDOM_BOX,
    RANDOM_NNZ_PER_ROW,
    RANDOM_Q_S_MAX,
    RANDOM_Q_S_MIN,
    RANDOM_REF_SPREAD,
    RANDOM_SLACK_MAX,
    RANDOM_SLACK_MIN,
    SYNTHETIC_BOX,
    SYNTHETIC_MEAN_LO,
    SYNTHETIC_MEAN_UP,
    SYNTHETIC_ROW_CAP,
    WELL_ROW_CAP,
    WELL_TILT,
    WELL_XD_BOX,
    WELL_XS_BOX,
    WELL_XS_TARGET,
)
from .problem import MdsNlpProblem, ProblemBounds, ProblemDims
from .quadratic import QuadraticMdsProblem

PROBLEM_KINDS = ("synthetic", "random", "nonconvex")


class _Sides(IntEnum):
    """Which bounds a randomly generated range keeps."""

    BOTH = 0
    LOWER_ONLY = 1
    UPPER_ONLY = 2


def synthetic_problem(k: int) -> QuadraticMdsProblem:
    """Convex mini-app problem with ``n_d = n_s = k`` and ``k + 3`` constraints.

    Objective ``1/2 sum (x_s - 1)^2 + 1/2 x_d^T (I + e e^T / k) x_d - e^T x_d``;
    equalities ``mean(x_s) + mean(x_d) = 1`` and ``x_s[0] = x_d[0]``;
    inequalities ``x_s[i] + mean(x_d) <= 2`` for every i and
    ``0.5 <= mean(x_d) <= 3``; all variables in ``[-10, 10]``.
    The condensed KKT matrix has dimension ``2k + 3``.

    Raises:
        ConfigError: If ``k < 1``.
    """
    if k < 1:
        msg = f"synthetic problem needs k >= 1, got {k}"
        raise ConfigError(msg)
    inv_k = 1.0 / k
    ones = np.ones(k)

    Adg = np.zeros((2, k))
    Adg[0] = inv_k
    Adg[1, 0] = -1.0
    Asg = TripletMatrix.from_entries(
        2, k, [(0, j, inv_k) for j in range(k)] + [(1, 0, 1.0)]
    )
    Adh = np.full((k + 1, k), inv_k)
    Ash = TripletMatrix.from_entries(k + 1, k, [(i, i, 1.0) for i in range(k)])

    box = np.full(k, SYNTHETIC_BOX)
    bounds = ProblemBounds(
        xd_lo=-box,
        xd_up=box.copy(),
        xs_lo=-box,
        xs_up=box.copy(),
        h_lo=np.append(np.full(k, -INF_BOUND), SYNTHETIC_MEAN_LO),
        h_up=np.append(np.full(k, SYNTHETIC_ROW_CAP), SYNTHETIC_MEAN_UP),
        g_E=np.array([1.0, 0.0]),
    )
    return QuadraticMdsProblem(
        f"synthetic:{k}",
        H_d=DenseMatrix.from_array(np.eye(k) + inv_k),
        c_d=-ones,
        q_s=ones.copy(),
        c_s=-ones,
        Adg=DenseMatrix.from_array(Adg),
        Asg=Asg,
        Adh=DenseMatrix.from_array(Adh),
        Ash=Ash,
        bounds=bounds,
        f0=0.5 * k,
    )


def _random_triplets(rng: np.random.Generator, rows: int, cols: int) -> TripletMatrix:
    per_row = min(RANDOM_NNZ_PER_ROW, cols)
    if per_row == 0:
        return TripletMatrix.empty(rows, cols)
    entries = [
        (r, int(c), float(rng.standard_normal()))
        for r in range(rows)
        for c in rng.choice(cols, size=per_row, replace=False)
    ]
    return TripletMatrix.from_entries(rows, cols, entries)


def _random_sides(
    rng: np.random.Generator, center: Vector, lo_gap: Vector, up_gap: Vector
) -> tuple[Vector, Vector]:
    side: npt.NDArray[np.int64] = rng.integers(0, len(_Sides), center.size)
    lo = np.where(side == _Sides.UPPER_ONLY, -INF_BOUND, center - lo_gap)
    up = np.where(side == _Sides.LOWER_ONLY, INF_BOUND, center + up_gap)
    return lo, up


def random_problem(
    seed: int, n_d: int, n_s: int, m_E: int, m_I: int
) -> QuadraticMdsProblem:
    """Seeded random convex quadratic MDS problem.

    The dense Hessian is SPD, the sparse diagonal strictly positive, sparse
    Jacobian rows hold about three entries, and constraints are built around
    a random reference point so a strict interior exists.

    Raises:
        ConfigError: If a count is negative or there are no constraints.
    """
    if min(n_d, n_s, m_E, m_I) < 0 or m_E + m_I < 1:
        msg = f"invalid random dimensions ({n_d}, {n_s}, {m_E}, {m_I})"
        raise ConfigError(msg)
    rng = np.random.default_rng(seed)

    B = rng.standard_normal((n_d, n_d))
    H_d = B @ B.T / max(n_d, 1) + np.eye(n_d)
    c_d = rng.standard_normal(n_d)
    q_s = rng.uniform(RANDOM_Q_S_MIN, RANDOM_Q_S_MAX, n_s)
    c_s = rng.standard_normal(n_s)
    Adg = rng.standard_normal((m_E, n_d))
    Adh = rng.standard_normal((m_I, n_d))
    Asg = _random_triplets(rng, m_E, n_s)
    Ash = _random_triplets(rng, m_I, n_s)

    ref_d = rng.uniform(-RANDOM_REF_SPREAD, RANDOM_REF_SPREAD, n_d)
    ref_s = rng.uniform(-RANDOM_REF_SPREAD, RANDOM_REF_SPREAD, n_s)
    g_ref = Adg @ ref_d + Asg.to_dense().array @ ref_s
    h_ref = Adh @ ref_d + Ash.to_dense().array @ ref_s

    h_lo, h_up = _random_sides(
        rng,
        h_ref,
        rng.uniform(RANDOM_SLACK_MIN, RANDOM_SLACK_MAX, m_I),
        rng.uniform(RANDOM_SLACK_MIN, RANDOM_SLACK_MAX, m_I),
    )
    xd_lo, xd_up = _random_sides(
        rng, np.zeros(n_d), np.full(n_d, RANDOM_BOX), np.full(n_d, RANDOM_BOX)
    )
    xs_lo, xs_up = _random_sides(
        rng, np.zeros(n_s), np.full(n_s, RANDOM_BOX), np.full(n_s, RANDOM_BOX)
    )
    bounds = ProblemBounds(xd_lo, xd_up, xs_lo, xs_up, h_lo, h_up, g_E=g_ref)
    return QuadraticMdsProblem(
        f"random:{seed}:{n_d}:{n_s}:{m_E}:{m_I}",
        H_d=DenseMatrix.from_array(H_d.reshape(n_d, n_d)),
        c_d=c_d,
        q_s=q_s,
        c_s=c_s,
        Adg=DenseMatrix.from_array(Adg.reshape(m_E, n_d)),
        Asg=Asg,
        Adh=DenseMatrix.from_array(Adh.reshape(m_I, n_d)),
        Ash=Ash,
        bounds=bounds,
    )


class DoubleWellProblem(MdsNlpProblem):
    """Nonconvex problem with a double-well dense objective.

    ``f = sum(x_d^4 / 4 - x_d^2 + 0.1 x_d) + 1/2 sum (x_s - 0.5)^2`` subject to
    ``sum x_d^2 + sum x_s = k`` and ``x_s[i] - x_d[i] <= 1``, with
    ``x_d in [-2, 2]`` and ``x_s in [-5, 5]``. The equality is nonlinear in
    ``x_d``, so its multiplier enters the dense Hessian block.
    """

    def __init__(self, k: int) -> None:
        """Build the size-``k`` instance.

        Raises:
            ConfigError: If ``k < 1``.
        """
        if k < 1:
            msg = f"nonconvex problem needs k >= 1, got {k}"
            raise ConfigError(msg)
        self.k = k
        self.name = f"nonconvex:{k}"
        bounds = ProblemBounds(
            xd_lo=np.full(k, -WELL_XD_BOX),
            xd_up=np.full(k, WELL_XD_BOX),
            xs_lo=np.full(k, -WELL_XS_BOX),
            xs_up=np.full(k, WELL_XS_BOX),
            h_lo=np.full(k, -INF_BOUND),
            h_up=np.full(k, WELL_ROW_CAP),
            g_E=np.array([float(k)]),
        )
        super().__init__(ProblemDims(n_d=k, n_s=k, m_E=1, m_I=k), bounds)
        self._Jsg = TripletMatrix.from_entries(1, k, [(0, j, 1.0) for j in range(k)])
        self._Jdh = DenseMatrix.from_array(-np.eye(k))
        self._Jsh = TripletMatrix.from_entries(k, k, [(i, i, 1.0) for i in range(k)])

    def objective(self, x_d: Vector, x_s: Vector) -> float:
        """Objective value."""
        wells = np.sum(0.25 * x_d**4 - x_d**2 + WELL_TILT * x_d)
        return float(wells + 0.5 * np.sum((x_s - WELL_XS_TARGET) ** 2))

    def gradient(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Objective gradient."""
        return x_d**3 - 2.0 * x_d + WELL_TILT, x_s - WELL_XS_TARGET

    def constraints(self, x_d: Vector, x_s: Vector) -> tuple[Vector, Vector]:
        """Constraint bodies."""
        g = np.array([float(np.dot(x_d, x_d) + np.sum(x_s))])
        return g, x_s - x_d

    def jacobians(
        self, x_d: Vector, x_s: Vector
    ) -> tuple[DenseMatrix, TripletMatrix, DenseMatrix, TripletMatrix]:
        """Jacobian blocks; only ``Jdg`` depends on the point."""
        Jdg = DenseMatrix(1, self.k, 2.0 * x_d)
        return Jdg, self._Jsg, self._Jdh, self._Jsh

    def hessian(
        self, x_d: Vector, x_s: Vector, y_g: Vector, y_h: Vector
    ) -> tuple[DenseMatrix, Vector]:
        """Diagonal dense block ``3 x_d^2 - 2 + 2 y_g``; unit sparse diagonal."""
        diag = 3.0 * x_d**2 - 2.0 + 2.0 * y_g[0]
        return DenseMatrix.from_array(np.diag(diag)), np.ones(self.k)

    def starting_point(self) -> tuple[Vector, Vector]:
        """Start on the hump of every well: ``x_d = 0``, ``x_s = 1``."""
        return np.zeros(self.k), np.ones(self.k)


def nonconvex_problem(k: int) -> DoubleWellProblem:
    """Build the double-well problem of size ``k``."""
    return DoubleWellProblem(k)


def _parse_ints(kind: str, params: list[str]) -> list[int]:
    try:
        return [int(p) for p in params]
    except ValueError:
        msg = f"non-integer parameter in {kind!r} problem spec: {':'.join(params)}"
        raise ConfigError(msg) from None


def parse_problem_spec(text: str) -> MdsNlpProblem:
    """Build a problem from its selector string.

    Accepted forms are ``synthetic:<k>``, ``nonconvex:<k>`` and
    ``random:<seed>:<n_d>:<n_s>:<m_E>:<m_I>``.

    Raises:
        ConfigError: If the text names no known problem or its parameters
            are malformed or out of range.
    """
    kind, *params = text.strip().split(":")
    values = _parse_ints(kind, params)
    match kind, values:
        case "synthetic", [k]:
            return synthetic_problem(k)
        case "nonconvex", [k]:
            return nonconvex_problem(k)
        case "random", [seed, n_d, n_s, m_E, m_I]:
            return random_problem(seed, n_d, n_s, m_E, m_I)
        case _:
            msg = (
                f"cannot parse problem spec {text!r} (expected synthetic:<k>, "
                "nonconvex:<k> or random:<seed>:<n_d>:<n_s>:<m_E>:<m_I>)"
            )
            raise ConfigError(msg)
