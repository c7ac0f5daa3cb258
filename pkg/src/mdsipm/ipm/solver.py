"""Outer barrier homotopy and inner Newton loop."""

import logging
import time
from pathlib import Path

import numpy as np

from mdsipm.errors import (
    ConfigError,
    EvalError,
    NumericError,
    RestorationNeededError,
    SingularSystemError,
)
from mdsipm.linalg import LinearAlgebra, Vector, make_linear_algebra, write_matrix_dump
from mdsipm.model import EvalBundle, MdsNlpProblem, eval_all, validate_problem

from .barrier import (
    bound_blocks,
    build_diagonals,
    constraint_violation,
    initialize,
    kkt_error,
    update_barrier,
)
from .constants import KKT3_DUMP_NAME, KKT4_DUMP_NAME
from .inertia import CorrectedStep, solve_with_inertia_correction
from .kkt import complete_direction, full_kkt_matrix, kkt_residuals
from .line_search import LineSearchOutcome, line_search
from .models import (
    BarrierState,
    IteratePoint,
    IterationRecord,
    SolveResult,
    SolveStatus,
)
from .options import SolverOptions
from .timing import KernelClass, KernelTimers, TimedLinearAlgebra

logger = logging.getLogger(__name__)

_FAILURES: dict[type[Exception], SolveStatus] = {
    SingularSystemError: SolveStatus.SINGULAR_SYSTEM,
    NumericError: SolveStatus.SINGULAR_SYSTEM,
    RestorationNeededError: SolveStatus.RESTORATION_NEEDED,
}


def _failure_status(exc: Exception) -> SolveStatus:
    return next(_FAILURES[t] for t in type(exc).__mro__ if t in _FAILURES)


def _interior_extremes(p: MdsNlpProblem, pt: IteratePoint) -> tuple[float, float]:
    """Smallest finite bound gap and smallest finite-bound dual."""
    min_gap = min_dual = np.inf
    for block in bound_blocks(p, pt):
        gap_lo, gap_up = block.gaps()
        for gap, z, mask in (
            (gap_lo, block.z_lo, block.has_lo),
            (gap_up, block.z_up, block.has_up),
        ):
            if np.any(mask):
                min_gap = min(min_gap, float(gap[mask].min()))
                min_dual = min(min_dual, float(z[mask].min()))
    return min_gap, min_dual


def _advance_barrier(
    p: MdsNlpProblem,
    pt: IteratePoint,
    bundle: EvalBundle,
    state: BarrierState,
    opts: SolverOptions,
    linalg: LinearAlgebra,
) -> float:
    """Lower ``mu`` as often as the current point allows; returns ``E_mu``."""
    while True:
        e_mu = kkt_error(p, pt, state.mu, bundle, opts, linalg).e_mu
        mu = update_barrier(state.mu, e_mu, opts)
        if mu == state.mu:
            return e_mu
        logger.debug("mu %.3e -> %.3e (E_mu=%.3e), filter reset", state.mu, mu, e_mu)
        state.mu = mu
        state.filter.reset()


def _dump(dump_dir: Path, iteration: int, step: CorrectedStep) -> None:
    dump_dir.mkdir(parents=True, exist_ok=True)
    write_matrix_dump(
        dump_dir / KKT4_DUMP_NAME.format(iteration), full_kkt_matrix(step.system)
    )
    write_matrix_dump(dump_dir / KKT3_DUMP_NAME.format(iteration), step.compressed.M)


def _record(
    iteration: int,
    state: BarrierState,
    e_mu: float,
    step: CorrectedStep,
    outcome: LineSearchOutcome,
    timings: dict[KernelClass, float],
    t_total: float,
    p: MdsNlpProblem,
) -> IterationRecord:
    min_gap, min_dual = _interior_extremes(p, outcome.point)
    return IterationRecord(
        iter=iteration,
        mu=state.mu,
        theta=outcome.theta,
        phi=outcome.phi,
        alpha_primal=outcome.alpha_primal,
        alpha_dual=outcome.alpha_dual,
        delta_w=step.delta_w,
        delta_c=step.delta_c,
        inertia=step.inertia,
        t_K1=timings[KernelClass.K1],
        t_K2=timings[KernelClass.K2],
        t_K3=timings[KernelClass.K3],
        t_K4=timings[KernelClass.K4],
        t_total=t_total,
        objective=outcome.bundle.f,
        e_mu=e_mu,
        min_gap=min_gap,
        min_dual=min_dual,
        trial_theta=outcome.trial_theta,
        trial_phi=outcome.trial_phi,
        dphi=outcome.dphi,
        alpha_max=outcome.alpha_max,
        branch=outcome.branch,
        theta_min=state.theta_min,
        theta_max=state.theta_max,
        filter=outcome.filter_before,
        delta_w_trials=step.trials,
        dim=step.compressed.dim,
    )


def solve(
    p: MdsNlpProblem,
    opts: SolverOptions | None = None,
    *,
    linalg: LinearAlgebra | None = None,
    dump_dir: Path | None = None,
    x0_d: Vector | None = None,
    x0_s: Vector | None = None,
) -> SolveResult:
    """Minimize ``p`` with the filter line-search interior-point method.

    Each iteration lowers ``mu`` while the barrier subproblem is solved well
    enough, condenses and factorizes the KKT system with inertia correction,
    and runs the filter line search. Algorithmic failures end the solve with
    a non-optimal status instead of raising.

    Args:
        p: Problem to solve.
        opts: Solver options (defaults if omitted).
        linalg: Kernel suite (the default backend if omitted).
        dump_dir: Directory receiving both KKT matrices of every iteration.
        x0_d: Starting dense variables (problem default if omitted).
        x0_s: Starting sparse variables (problem default if omitted).

    Returns:
        Final status, iterate and per-iteration records.

    Raises:
        ConfigError: If the problem violates the structural requirements.
    """
    opts = opts or SolverOptions()
    violations = validate_problem(p)
    if violations:
        msg = f"problem {p.name!r} is not solvable as given: " + "; ".join(violations)
        raise ConfigError(msg)
    timers = KernelTimers(enabled=opts.timing)
    suite = linalg or make_linear_algebra()
    if opts.timing:
        suite = TimedLinearAlgebra(suite, timers)

    pt = initialize(p, opts, x0_d, x0_s)
    state = BarrierState(mu=opts.mu0)
    records: list[IterationRecord] = []
    try:
        bundle = eval_all(p, pt.x_d, pt.x_s, pt.y_g, pt.y_h)
    except EvalError as exc:
        logger.warning("evaluation failed at the starting point: %s", exc)
        return SolveResult(
            SolveStatus.EVAL_FAILURE, pt, np.nan, 0, (), message=str(exc)
        )
    theta0 = constraint_violation(p, bundle.g_val, bundle.h_val, pt.s, suite)
    state.theta_max = opts.theta_max_fact * max(1.0, theta0)
    state.theta_min = opts.theta_min_fact * max(1.0, theta0)
    logger.info("solving %r: %s", p.name, p.dims)

    message = ""
    while True:
        e_0 = kkt_error(p, pt, 0.0, bundle, opts, suite).e_mu
        if e_0 <= opts.tol:
            status = SolveStatus.OPTIMAL
            break
        if state.iteration >= opts.max_iter:
            status = SolveStatus.MAX_ITER
            break

        timers.reset()
        started = time.perf_counter()
        e_mu = _advance_barrier(p, pt, bundle, state, opts, suite)
        mu = state.mu
        try:
            diagonals = build_diagonals(p, pt)
            residuals = kkt_residuals(p, pt, bundle, mu, diagonals, suite)
            step = solve_with_inertia_correction(
                bundle, diagonals, residuals, mu, opts, state, suite, timers
            )
            direction = complete_direction(p, pt, mu, step.steps, residuals, diagonals)
            outcome = line_search(p, pt, bundle, direction, mu, state, opts, suite)
        except (SingularSystemError, NumericError, RestorationNeededError) as exc:
            status = _failure_status(exc)
            message = str(exc)
            logger.warning("iteration %d: %s", state.iteration, message)
            break
        if dump_dir is not None:
            _dump(dump_dir, state.iteration, step)

        record = _record(
            state.iteration,
            state,
            e_mu,
            step,
            outcome,
            timers.snapshot(),
            time.perf_counter() - started,
            p,
        )
        records.append(record)
        logger.info(
            "%4d mu=%.2e theta=%.3e phi=%.6e a_p=%.3e a_d=%.3e dw=%.1e inertia=%s",
            record.iter,
            record.mu,
            record.trial_theta,
            record.trial_phi,
            record.alpha_primal,
            record.alpha_dual,
            record.delta_w,
            record.inertia,
        )
        pt, bundle = outcome.point, outcome.bundle
        state.iteration += 1

    logger.info("%s after %d iterations (E_0=%.3e)", status, state.iteration, e_0)
    return SolveResult(
        status=status,
        point=pt,
        e_mu_final=e_0,
        iterations=state.iteration,
        records=tuple(records),
        objective=bundle.f,
        message=message,
    )
