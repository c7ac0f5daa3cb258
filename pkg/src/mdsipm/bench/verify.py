"""Randomized oracle suites run by ``mdsipm verify``.

Each suite draws seeded random instances, checks one property against an
independent dense oracle, and counts passes and failures.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from mdsipm.errors import MdsIpmError
from mdsipm.ipm import (
    KktSystem4,
    SolverOptions,
    compress,
    full_kkt_matrix,
    full_kkt_rhs,
    recover_sparse_step,
    replay_acceptance,
    solve,
)
from mdsipm.ldl import Inertia, bk_factorize, factorize, ldl_inertia, reconstruct
from mdsipm.linalg import (
    BackendSelector,
    DenseMatrix,
    DiagonalMatrix,
    LinearAlgebra,
    SequentialLinearAlgebra,
    TripletMatrix,
)
from mdsipm.model import check_derivatives, parse_problem_spec

from .constants import (
    COMPRESSION_TOL,
    EIGEN_GAP,
    FD_TOL,
    FUSED_TOL,
    RECONSTRUCTION_FACTOR,
    VERIFY_DENSITY,
    VERIFY_MAX_BLOCK,
    VERIFY_MAX_EQ,
    VERIFY_MAX_INEQ,
    VERIFY_MAX_LDL_N,
    VERIFY_SOLVE_PROBLEMS,
)

logger = logging.getLogger(__name__)

type Matrix = npt.NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class VerifyCaps:
    """Upper bounds on the random instance sizes."""

    max_block: int = VERIFY_MAX_BLOCK
    max_eq: int = VERIFY_MAX_EQ
    max_ineq: int = VERIFY_MAX_INEQ
    max_ldl_n: int = VERIFY_MAX_LDL_N


@dataclass(slots=True)
class SuiteResult:
    """Outcome of one suite."""

    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when nothing failed."""
        return self.failed == 0

    def check(self, ok: bool, error: float, label: str) -> None:
        """Count one instance."""
        self.worst = max(self.worst, error)
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)


@dataclass(frozen=True, slots=True)
class VerifyReport:
    """Results of every suite that ran."""

    suites: tuple[SuiteResult, ...] = ()

    @property
    def ok(self) -> bool:
        """True when every suite passed."""
        return all(s.ok for s in self.suites)

    @property
    def failed(self) -> int:
        """Failures summed over suites."""
        return sum(s.failed for s in self.suites)


def _sign_counts(A: Matrix) -> tuple[Inertia, bool]:
    """Eigenvalue sign counts and whether they are trustworthy."""
    eig = np.linalg.eigvalsh(A)
    norm = float(np.abs(A).sum(axis=1).max()) if A.size else 0.0
    clear = bool(np.all(np.abs(eig) > EIGEN_GAP * max(norm, 1.0)))
    pos = int(np.count_nonzero(eig > 0))
    return Inertia(pos, 0, eig.size - pos), clear


def _sparse_block(rng: np.random.Generator, rows: int, cols: int) -> TripletMatrix:
    dense = rng.standard_normal((rows, cols))
    dense[rng.random((rows, cols)) > VERIFY_DENSITY] = 0.0
    return TripletMatrix.from_dense(dense.reshape(rows, cols))


def random_kkt_system(
    rng: np.random.Generator, caps: VerifyCaps, *, convex: bool = True
) -> KktSystem4:
    """Draw a 4x4 KKT system with positive ``q_ss`` and ``D_h``.

    With ``convex`` the dense Hessian block is positive definite, so the
    full matrix is quasi-definite and always nonsingular.
    """
    n_s = int(rng.integers(1, caps.max_block + 1))
    n_d = int(rng.integers(1, caps.max_block + 1))
    m_E = int(rng.integers(0, caps.max_eq + 1))
    m_I = int(rng.integers(0, caps.max_ineq + 1))
    B = rng.standard_normal((n_d, n_d))
    Qdd = B @ B.T + np.eye(n_d) if convex else (B + B.T) / 2
    return KktSystem4(
        q_ss=rng.uniform(0.5, 5.0, n_s),
        Qdd=DenseMatrix.from_array(Qdd.reshape(n_d, n_d)),
        Jsg=_sparse_block(rng, m_E, n_s),
        Jsh=_sparse_block(rng, m_I, n_s),
        Jdg=DenseMatrix.from_array(rng.standard_normal((m_E, n_d))),
        Jdh=DenseMatrix.from_array(rng.standard_normal((m_I, n_d))),
        dh=rng.uniform(0.5, 5.0, m_I),
        r_xs=rng.standard_normal(n_s),
        r_xd=rng.standard_normal(n_d),
        r_yg=rng.standard_normal(m_E),
        r_yh=rng.standard_normal(m_I),
        delta_w=0.0,
        delta_c=float(rng.uniform(1e-6, 1e-2)),
    )


def _relative_inf(x: Matrix, ref: Matrix) -> float:
    scale = float(np.abs(ref).max()) if ref.size else 0.0
    return float(np.abs(x - ref).max()) / max(scale, np.finfo(np.float64).tiny)


def compression_suite(
    seeds: int, caps: VerifyCaps, linalg: LinearAlgebra
) -> SuiteResult:
    """Condensed solve plus recovery against a dense solve of the full system."""
    result = SuiteResult("compression")
    for seed in range(seeds):
        k4 = random_kkt_system(np.random.default_rng(seed), caps)
        kkt = compress(k4, linalg)
        dx_d, dy_g, dy_h = kkt.split(factorize(kkt.M).solve(kkt.rhs))
        dx_s = recover_sparse_step(k4, dy_g, dy_h, linalg)
        ours = np.concatenate((dx_s, dx_d, dy_g, dy_h))
        oracle = np.linalg.solve(full_kkt_matrix(k4).array, full_kkt_rhs(k4))
        error = _relative_inf(ours, oracle)
        result.check(error <= COMPRESSION_TOL, error, f"seed {seed}")
    return result


def haynsworth_suite(
    seeds: int, caps: VerifyCaps, linalg: LinearAlgebra
) -> SuiteResult:
    """Inertia of the full system equals ``(n_s, 0, 0)`` plus that of the condensed."""
    result = SuiteResult("haynsworth")
    for seed in range(seeds):
        k4 = random_kkt_system(np.random.default_rng(seed), caps, convex=False)
        oracle, clear = _sign_counts(full_kkt_matrix(k4).array)
        if not clear:
            result.skipped += 1
            continue
        ours = Inertia(k4.n_s, 0, 0) + factorize(compress(k4, linalg).M).inertia()
        result.check(ours == oracle, float(ours != oracle), f"seed {seed}")
    return result


def ldl_suite(seeds: int, caps: VerifyCaps) -> SuiteResult:
    """Reference Bunch-Kaufman: reconstruction residual and inertia."""
    result = SuiteResult("ldl")
    eps = np.finfo(np.float64).eps
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, caps.max_ldl_n + 1))
        B = rng.standard_normal((n, n))
        A = (B + B.T) / 2
        factors = bk_factorize(DenseMatrix.from_array(A))
        norm = float(np.abs(A).sum(axis=1).max())
        residual = float(np.abs(reconstruct(factors).array - A).sum(axis=1).max())
        bound = RECONSTRUCTION_FACTOR * n * eps * norm
        oracle, clear = _sign_counts(A)
        inertia_ok = not clear or ldl_inertia(factors) == oracle
        result.check(
            residual <= bound and inertia_ok, residual / max(norm, eps), f"n={n}"
        )
    return result


def derivative_suite(seeds: int, linalg: LinearAlgebra) -> SuiteResult:
    """Finite-difference checks of every built-in problem kind."""
    result = SuiteResult("derivatives")
    specs = [*VERIFY_SOLVE_PROBLEMS, *(f"random:{s}:4:6:2:3" for s in range(seeds))]
    for spec in specs:
        report = check_derivatives(parse_problem_spec(spec), seed=0, linalg=linalg)
        result.check(report.passed(FD_TOL), report.worst, spec)
    return result


def fused_suite(seeds: int, caps: VerifyCaps, linalg: LinearAlgebra) -> SuiteResult:
    """``M += sign * A diag(d) B^T`` against the dense product."""
    result = SuiteResult("fused")
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        rows_a, rows_b = rng.integers(1, caps.max_block + 1, 2)
        inner = int(rng.integers(1, caps.max_block + 1))
        A = _sparse_block(rng, int(rows_a), inner)
        B = _sparse_block(rng, int(rows_b), inner)
        d = rng.uniform(0.1, 2.0, inner)
        base = rng.standard_normal((int(rows_a), int(rows_b)))
        M = DenseMatrix.from_array(base.copy())
        linalg.fused_add_sdst(M, A, DiagonalMatrix(d), B, -1.0)
        oracle = base - A.to_dense().array @ np.diag(d) @ B.to_dense().array.T
        error = _relative_inf(M.array, oracle)
        result.check(error <= FUSED_TOL, error, f"seed {seed}")
    return result


def solve_suites(
    opts: SolverOptions, linalg: LinearAlgebra
) -> tuple[SuiteResult, SuiteResult, SuiteResult]:
    """Interiority, inertia discipline and filter replay on logged solves."""
    interior = SuiteResult("interiority")
    inertia = SuiteResult("inertia")
    replay = SuiteResult("filter-replay")
    for spec in VERIFY_SOLVE_PROBLEMS:
        p = parse_problem_spec(spec)
        target = Inertia(p.n_d, 0, p.dims.m)
        try:
            run = solve(p, opts, linalg=linalg)
        except MdsIpmError as exc:
            for suite in (interior, inertia, replay):
                suite.check(ok=False, error=0.0, label=f"{spec}: {exc}")
            continue
        for r in run.records:
            label = f"{spec} iter {r.iter}"
            interior.check(r.min_gap > 0 and r.min_dual > 0, 0.0, label)
            inertia.check(r.inertia == target, 0.0, label)
            replay.check(replay_acceptance(r, opts), 0.0, label)
    return interior, inertia, replay


def verify_suite(
    seeds: int,
    caps: VerifyCaps | None = None,
    *,
    linalg: LinearAlgebra | None = None,
    opts: SolverOptions | None = None,
) -> VerifyReport:
    """Run every suite with ``seeds`` random instances each.

    Args:
        seeds: Instances per randomized suite; 0 runs nothing.
        caps: Size limits of random instances.
        linalg: Kernel suite under test (a reference suite if omitted).
        opts: Options of the logged solves.

    Returns:
        Per-suite pass/fail counts.
    """
    if seeds <= 0:
        return VerifyReport()
    caps = caps or VerifyCaps()
    linalg = linalg or SequentialLinearAlgebra(BackendSelector())
    opts = opts or SolverOptions()
    runs: list[Callable[[], SuiteResult | tuple[SuiteResult, ...]]] = [
        lambda: compression_suite(seeds, caps, linalg),
        lambda: haynsworth_suite(seeds, caps, linalg),
        lambda: ldl_suite(seeds, caps),
        lambda: derivative_suite(seeds, linalg),
        lambda: fused_suite(seeds, caps, linalg),
        lambda: solve_suites(opts, linalg),
    ]
    suites: list[SuiteResult] = []
    for run in runs:
        out = run()
        for suite in out if isinstance(out, tuple) else (out,):
            logger.info(
                "%s: %d passed, %d failed, %d skipped (worst %.2e)",
                suite.name,
                suite.passed,
                suite.failed,
                suite.skipped,
                suite.worst,
            )
            suites.append(suite)
    return VerifyReport(tuple(suites))
