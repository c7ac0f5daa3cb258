"""Backtracking filter line search and the bound-dual safeguard."""

import logging
from dataclasses import dataclass

import numpy as np

from mdsipm.errors import EvalError, NumericError, RestorationNeededError
from mdsipm.linalg import INF_BOUND, LinearAlgebra, Vector
from mdsipm.model import EvalBundle, MdsNlpProblem, eval_all

from .barrier import barrier_phi, barrier_slope, bound_blocks, constraint_violation
from .constants import BACKTRACK_FACTOR
from .filter import Filter
from .models import AcceptBranch, BarrierState, IteratePoint, IterationRecord
from .options import SolverOptions

logger = logging.getLogger(__name__)

_DUAL_PAIRS = (("z_lo_d", "z_up_d"), ("z_lo_s", "z_up_s"), ("v_lo", "v_up"))


@dataclass(frozen=True, slots=True)
class LineSearchOutcome:
    """Accepted trial point and the quantities that decided its acceptance.

    Attributes:
        point: New iterate, bound duals already safeguarded.
        bundle: Model evaluation at ``point``.
        alpha_primal: Accepted primal step length.
        alpha_dual: Step length applied to the bound duals.
        alpha_max: Fraction-to-boundary cap the search started from.
        theta: Constraint violation at the starting point.
        phi: Barrier objective at the starting point.
        trial_theta: Constraint violation at ``point``.
        trial_phi: Barrier objective at ``point``.
        dphi: Directional derivative of the barrier objective.
        branch: Acceptance test that passed.
        filter_before: Filter entries the trial was checked against.
        backtracks: Number of halvings.
    """

    point: IteratePoint
    bundle: EvalBundle
    alpha_primal: float
    alpha_dual: float
    alpha_max: float
    theta: float
    phi: float
    trial_theta: float
    trial_phi: float
    dphi: float
    branch: AcceptBranch
    filter_before: tuple[tuple[float, float], ...]
    backtracks: int


def acceptance_branch(
    theta: float,
    phi: float,
    dphi: float,
    alpha: float,
    trial_theta: float,
    trial_phi: float,
    *,
    theta_min: float,
    theta_max: float,
    filter_ok: bool,
    opts: SolverOptions,
) -> AcceptBranch | None:
    """Decide whether a trial point is acceptable and by which test.

    Trials above ``theta_max`` or dominated by the filter are rejected. When
    the current point is nearly feasible and the switching condition holds,
    only the Armijo test on ``phi`` applies; otherwise a sufficient decrease
    in either ``theta`` or ``phi`` is required.

    Returns:
        The passing branch, or None if the trial is rejected.
    """
    if trial_theta > theta_max or not filter_ok:
        return None
    switching = dphi < 0 and alpha * (-dphi) ** opts.s_phi > (
        opts.delta_switch * theta**opts.s_theta
    )
    if theta <= theta_min and switching:
        if trial_phi <= phi + opts.eta_phi * alpha * dphi:
            return AcceptBranch.ARMIJO
        return None
    if trial_theta < (1.0 - opts.gamma_theta) * theta:
        return AcceptBranch.THETA
    if trial_phi < phi - opts.gamma_phi * theta:
        return AcceptBranch.PHI
    return None


def replay_acceptance(record: IterationRecord, opts: SolverOptions) -> bool:
    """Re-run the acceptance test from a logged record.

    Returns:
        True if the logged values reproduce the logged branch.
    """
    filter_ok = Filter(list(record.filter)).is_acceptable(
        record.trial_theta, record.trial_phi
    )
    branch = acceptance_branch(
        record.theta,
        record.phi,
        record.dphi,
        record.alpha_primal,
        record.trial_theta,
        record.trial_phi,
        theta_min=record.theta_min,
        theta_max=record.theta_max,
        filter_ok=filter_ok,
        opts=opts,
    )
    return branch is record.branch


def fraction_to_boundary(
    p: MdsNlpProblem,
    pt: IteratePoint,
    direction: IteratePoint,
    tau: float,
    linalg: LinearAlgebra,
) -> tuple[float, float]:
    """Largest primal and bound-dual steps that keep a ``tau`` margin.

    Returns:
        ``(alpha_max, alpha_dual)``.
    """
    alpha_max = 1.0
    alpha_dual = 1.0
    for block, names in zip(bound_blocks(p, pt), _DUAL_PAIRS, strict=True):
        step = getattr(direction, block.name)
        alpha_max = min(
            alpha_max, linalg.max_step_to_bound(block.x, step, block.lo, block.up, tau)
        )
        for name, mask in zip(names, (block.has_lo, block.has_up), strict=True):
            z = getattr(pt, name)
            lo = np.where(mask, 0.0, -INF_BOUND)
            up = np.full(z.size, INF_BOUND)
            dz = getattr(direction, name)
            alpha_dual = min(alpha_dual, linalg.max_step_to_bound(z, dz, lo, up, tau))
    return alpha_max, alpha_dual


def safeguard_duals(
    p: MdsNlpProblem, pt: IteratePoint, mu: float, kappa_sigma: float
) -> IteratePoint:
    """Clip each bound dual into ``[mu / (kappa * gap), kappa * mu / gap]``.

    Duals of infinite bounds stay zero.
    """
    changes: dict[str, Vector] = {}
    for block, names in zip(bound_blocks(p, pt), _DUAL_PAIRS, strict=True):
        for name, gap in zip(names, block.gaps(), strict=True):
            changes[name] = np.clip(
                getattr(pt, name), mu / (kappa_sigma * gap), kappa_sigma * mu / gap
            )
    return pt.with_values(**changes)


def line_search(
    p: MdsNlpProblem,
    pt: IteratePoint,
    bundle: EvalBundle,
    direction: IteratePoint,
    mu: float,
    state: BarrierState,
    opts: SolverOptions,
    linalg: LinearAlgebra,
) -> LineSearchOutcome:
    """Backtrack from the fraction-to-boundary step until the filter accepts.

    Step lengths are halved starting at ``alpha_max``. A trial whose
    evaluation fails is treated as rejected. Unless the Armijo branch
    accepted, the filter is augmented with the current point's envelope.

    Args:
        p: Problem.
        pt: Current strictly interior iterate.
        bundle: Model evaluation at ``pt``.
        direction: Full primal-dual search direction.
        mu: Barrier parameter.
        state: Solve state holding the filter and theta bounds.
        opts: Solver options.
        linalg: Kernel suite.

    Returns:
        The accepted point and acceptance data.

    Raises:
        NumericError: If the direction has non-finite entries.
        RestorationNeededError: If the step falls below the backtracking floor.
    """
    if not direction.is_finite():
        msg = "search direction has non-finite entries"
        raise NumericError(msg)
    tau = max(opts.tau_min, 1.0 - mu)
    alpha_max, alpha_dual = fraction_to_boundary(p, pt, direction, tau, linalg)
    theta = constraint_violation(p, bundle.g_val, bundle.h_val, pt.s, linalg)
    phi = barrier_phi(p, pt, mu, bundle.f)
    dphi = barrier_slope(p, pt, mu, bundle, direction, linalg)
    filter_before = state.filter.snapshot()

    alpha = alpha_max
    floor = opts.alpha_min_frac * alpha_max
    backtracks = 0
    while alpha >= floor:
        trial = pt.step(direction, alpha, alpha_dual)
        try:
            trial_bundle = eval_all(p, trial.x_d, trial.x_s, trial.y_g, trial.y_h)
        except EvalError as exc:
            logger.debug("alpha=%.3e: evaluation failed (%s)", alpha, exc.component)
        else:
            trial_theta = constraint_violation(
                p, trial_bundle.g_val, trial_bundle.h_val, trial.s, linalg
            )
            trial_phi = barrier_phi(p, trial, mu, trial_bundle.f)
            branch = acceptance_branch(
                theta,
                phi,
                dphi,
                alpha,
                trial_theta,
                trial_phi,
                theta_min=state.theta_min,
                theta_max=state.theta_max,
                filter_ok=state.filter.is_acceptable(trial_theta, trial_phi),
                opts=opts,
            )
            if branch is not None:
                if branch is not AcceptBranch.ARMIJO:
                    state.filter.add(
                        (1.0 - opts.gamma_theta) * theta, phi - opts.gamma_phi * theta
                    )
                return LineSearchOutcome(
                    point=safeguard_duals(p, trial, mu, opts.kappa_Sigma),
                    bundle=trial_bundle,
                    alpha_primal=alpha,
                    alpha_dual=alpha_dual,
                    alpha_max=alpha_max,
                    theta=theta,
                    phi=phi,
                    trial_theta=trial_theta,
                    trial_phi=trial_phi,
                    dphi=dphi,
                    branch=branch,
                    filter_before=filter_before,
                    backtracks=backtracks,
                )
            logger.debug(
                "alpha=%.3e rejected: theta %.3e -> %.3e, phi %.6e -> %.6e",
                alpha,
                theta,
                trial_theta,
                phi,
                trial_phi,
            )
        alpha *= BACKTRACK_FACTOR
        backtracks += 1

    msg = f"step length fell below {floor:.3e} after {backtracks} backtracks"
    raise RestorationNeededError(msg)
