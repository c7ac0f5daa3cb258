"""Shared test fixtures."""

from dataclasses import fields

import numpy as np
import pytest

from mdsipm.bench import BenchRecord, SuiteResult
from mdsipm.ipm import AcceptBranch, IteratePoint, IterationRecord, KktSystem4
from mdsipm.ldl import Inertia
from mdsipm.linalg import (
    INF_BOUND,
    BackendSelector,
    DenseMatrix,
    SequentialLinearAlgebra,
)
from mdsipm.linalg import TripletMatrix as Triplets
from mdsipm.model import ProblemBounds, QuadraticMdsProblem

# Tolerances
EXACT_TOL = 1e-12
FD_TOL = 1e-5
SOLVE_TOL = 1e-6
ORACLE_TOL = 1e-8
LDL_SOLVE_TOL = 1e-10
PARALLEL_TOL = 1e-13

# Kernel example values
AXPY_ALPHA = 2.5
DOT_ONES_LEN = 5
DOT_RESULT = 32.0
NORM_345 = 5.0
MIN_VALUE = -7.0
STEP_TAU_99 = 0.99
STEP_TAU_90 = 0.9
STEP_BOX = 0.225
GEMV_BETA = 2.0
MDS_RESULT = 11.0

# Factorization sizes
LDL_N_SOLVE = 20
LDL_N_INERTIA = 15
EIGEN_MARGIN = 1e-3
LDL_RANDOM_N = 60
IDENTITY_N = 4

# Problem sizes and dimensions
K_SMALL = 2
K_MEDIUM = 10
K_LARGE = 1000
SYNTHETIC_K1_N = 2
SYNTHETIC_K1_M = 4
SYNTHETIC_K1_DIM = 5
SYNTHETIC_K10_DIM = 23
RANDOM_DIMS = (3, 4, 1, 2)
RANDOM_SEED = 1
RANDOM_SEEDS = 50
MAX_ITERATIONS = 100
NONCONVEX_K = 4

# Barrier values
MU0 = 0.1
MU_AFTER_FIRST_DROP = 0.02
BIG_ERROR = 1e3
COMPLEMENTARITY_GAP = 2.0
LOWER_DIAGONAL = 3.0

# Bench / verify
BENCH_SIZES = (10, 50, 100)
BENCH_SMALL = 10
BENCH_K4_SIZE = 200
BENCH_COMPARE_K = 500
K4_FRACTION_MIN = 0.5
COMPRESSED_SPEEDUP = 1.5
TIMING_OVERHEAD_MAX = 1.05
VERIFY_SEEDS_FAST = 5
COMPRESSED_DIM_K100 = 203

# Formatters and CLI
CLIP_WIDTH_8 = 8
CLIP_WIDTH_10 = 10
CLIP_WIDTH_15 = 15
COL_COUNT_3 = 3
MIN_TABLE_LINES = 4
SAMPLE_K = 10
SAMPLE_ITERATIONS = 12
SAMPLE_DIM = 23
SAMPLE_FULL_DIM = 63
SAMPLE_FRACTION = 0.625
SAMPLE_SEEDS = 3

def box_problem() -> QuadraticMdsProblem:
    """``x_d in [0, 3]``, ``x_s >= 0`` and ``x_d + x_s <= 4``, no equalities."""
    bounds = ProblemBounds(
        xd_lo=np.zeros(1),
        xd_up=np.full(1, 3.0),
        xs_lo=np.zeros(1),
        xs_up=np.full(1, INF_BOUND),
        h_lo=np.full(1, -INF_BOUND),
        h_up=np.full(1, 4.0),
        g_E=np.zeros(0),
    )
    return QuadraticMdsProblem(
        "box",
        H_d=DenseMatrix.identity(1),
        c_d=np.zeros(1),
        q_s=np.ones(1),
        c_s=np.zeros(1),
        Adg=DenseMatrix.zeros(0, 1),
        Asg=Triplets.empty(0, 1),
        Adh=DenseMatrix.identity(1),
        Ash=Triplets.from_entries(1, 1, [(0, 0, 1.0)]),
        bounds=bounds,
    )

def box_point(**changes) -> IteratePoint:
    """``x_d = 1``, ``x_s = 1``, ``s = 2`` with zero multipliers."""
    one = np.ones(1)
    values = {
        "x_d": one.copy(),
        "x_s": one.copy(),
        "s": 2.0 * one,
        "y_g": np.zeros(0),
        "y_h": np.zeros(1),
        "z_lo_d": np.zeros(1),
        "z_up_d": np.zeros(1),
        "z_lo_s": np.zeros(1),
        "z_up_s": np.zeros(1),
        "v_lo": np.zeros(1),
        "v_up": np.zeros(1),
    }
    values.update(changes)
    return IteratePoint(**values)


def zero_direction(pt: IteratePoint) -> IteratePoint:
    """All-zero direction shaped like ``pt``."""
    return IteratePoint(
        **{f.name: np.zeros_like(getattr(pt, f.name)) for f in fields(IteratePoint)}
    )


@pytest.fixture
def linalg():
    """Reference kernel suite.

    Returns:
        SequentialLinearAlgebra: Suite bound to the DEFAULT selector.
    """
    return SequentialLinearAlgebra(BackendSelector())

@pytest.fixture
def rng():
    """Seeded random generator.

    Returns:
        numpy.random.Generator: Generator with a fixed seed.
    """
    return np.random.default_rng(12345)

@pytest.fixture
def make_kkt4():
    """Create KktSystem4 objects from plain arrays.

    Returns:
        Callable[..., KktSystem4]: Factory building a 4x4 system; sparse blocks
        are given densely and converted to triplets.
    """

    def _make(
        q_ss,
        Qdd,
        Jsg,
        Jsh,
        Jdg,
        Jdh,
        dh,
        *,
        r_xs=None,
        r_xd=None,
        r_yg=None,
        r_yh=None,
        delta_w: float = 0.0,
        delta_c: float = 0.0,
    ) -> KktSystem4:
        q_ss = np.asarray(q_ss, dtype=float)
        Qdd = np.atleast_2d(np.asarray(Qdd, dtype=float))
        Jdg = np.asarray(Jdg, dtype=float).reshape(-1, Qdd.shape[0])
        Jdh = np.asarray(Jdh, dtype=float).reshape(-1, Qdd.shape[0])
        dh = np.asarray(dh, dtype=float)
        m_E, m_I, n_s = Jdg.shape[0], Jdh.shape[0], q_ss.size
        return KktSystem4(
            q_ss=q_ss,
            Qdd=DenseMatrix.from_array(Qdd),
            Jsg=Triplets.from_dense(np.asarray(Jsg, dtype=float).reshape(m_E, n_s)),
            Jsh=Triplets.from_dense(np.asarray(Jsh, dtype=float).reshape(m_I, n_s)),
            Jdg=DenseMatrix.from_array(Jdg.reshape(m_E, Qdd.shape[0])),
            Jdh=DenseMatrix.from_array(Jdh.reshape(m_I, Qdd.shape[0])),
            dh=dh,
            r_xs=np.zeros(q_ss.size) if r_xs is None else np.asarray(r_xs, float),
            r_xd=np.zeros(Qdd.shape[0]) if r_xd is None else np.asarray(r_xd, float),
            r_yg=np.zeros(m_E) if r_yg is None else np.asarray(r_yg, float),
            r_yh=np.zeros(m_I) if r_yh is None else np.asarray(r_yh, float),
            delta_w=delta_w,
            delta_c=delta_c,
        )

    return _make

@pytest.fixture
def tiny_kkt4(make_kkt4):
    """The 1x1-block system with Q_s=2, Q_d=3, Jsg=Jdg=Jsh=1, Jdh=0, D_h=1.

    Returns:
        KktSystem4: System with right-hand side (1, 2, 3, 4).
    """
    return make_kkt4(
        [2.0],
        [[3.0]],
        [[1.0]],
        [[1.0]],
        [[1.0]],
        [[0.0]],
        [1.0],
        r_xs=[1.0],
        r_xd=[2.0],
        r_yg=[3.0],
        r_yh=[4.0],
    )


@pytest.fixture
def sample_bench_records():
    """Two bench records, the second with a full factorization comparison.

    Returns:
        list[BenchRecord]: Records for k = 10 and k = 20.
    """
    return [
        BenchRecord(
            k=SAMPLE_K,
            status="Optimal",
            iterations=SAMPLE_ITERATIONS,
            dim=SAMPLE_DIM,
            avg_iter_time=0.004,
            avg_t_K1=0.0001,
            avg_t_K2=0.0002,
            avg_t_K3=0.0005,
            avg_t_K4=0.0025,
            k4_fraction=SAMPLE_FRACTION,
        ),
        BenchRecord(
            k=2 * SAMPLE_K,
            status="MaxIter",
            iterations=SAMPLE_ITERATIONS,
            dim=2 * SAMPLE_DIM - 3,
            avg_iter_time=0.01,
            avg_t_K1=0.0002,
            avg_t_K2=0.0004,
            avg_t_K3=0.001,
            avg_t_K4=0.007,
            k4_fraction=0.7,
            full_dim=SAMPLE_FULL_DIM,
            t_factor_full=0.003,
            t_factor_compressed=0.001,
        ),
    ]


@pytest.fixture
def sample_iterations():
    """Two iteration records of a small solve.

    Returns:
        list[IterationRecord]: Records for iterations 0 and 1.
    """
    inertia = Inertia(SAMPLE_K, 0, SAMPLE_K + 3)
    return [
        IterationRecord(
            iter=i,
            mu=0.1 / (i + 1),
            theta=1.0 / (i + 1),
            phi=2.5 - i,
            alpha_primal=1.0,
            alpha_dual=0.5,
            delta_w=0.0,
            delta_c=0.0,
            inertia=inertia,
            t_K1=1e-5,
            t_K2=2e-5,
            t_K3=3e-5,
            t_K4=4e-4,
            t_total=1e-3,
            objective=3.0 - i,
            branch=AcceptBranch.PHI,
        )
        for i in range(2)
    ]


@pytest.fixture
def sample_suites():
    """One passing and one failing suite.

    Returns:
        list[SuiteResult]: Suites named ldl and fused.
    """
    return [
        SuiteResult("ldl", passed=SAMPLE_SEEDS, worst=1e-15),
        SuiteResult(
            "fused", passed=SAMPLE_SEEDS - 1, failed=1, worst=2.0, failures=["seed 2"]
        ),
    ]
