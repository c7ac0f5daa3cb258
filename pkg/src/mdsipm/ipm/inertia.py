"""Inertia-corrected solve of the condensed KKT system."""

import logging
from dataclasses import dataclass

from mdsipm.errors import AssemblyError, CompressionError, SingularSystemError
from mdsipm.ldl import Inertia, SymmetricFactorization, factorize
from mdsipm.linalg import LinearAlgebra, Vector
from mdsipm.model import EvalBundle

from .kkt import assemble_kkt4, compress, recover_sparse_step
from .models import (
    BarrierDiagonals,
    BarrierState,
    CompressedKkt,
    KktResiduals,
    KktSystem4,
)
from .options import SolverOptions
from .timing import KernelClass, KernelTimers

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CorrectedStep:
    """Primal-dual step of the 4x4 system and how it was obtained.

    Attributes:
        steps: ``(dx_s, dx_d, dy_g, dy_h)``.
        system: The accepted 4x4 system.
        compressed: Its condensed form.
        delta_w: Primal regularization used.
        delta_c: Dual regularization used.
        inertia: Inertia of the condensed matrix (always the target).
        trials: Distinct ``delta_w`` values tried, in increasing order.
    """

    steps: tuple[Vector, Vector, Vector, Vector]
    system: KktSystem4
    compressed: CompressedKkt
    delta_w: float
    delta_c: float
    inertia: Inertia
    trials: tuple[float, ...]


@dataclass(frozen=True, slots=True)
class _Trial:
    system: KktSystem4
    compressed: CompressedKkt
    factors: SymmetricFactorization
    inertia: Inertia


def _next_delta_w(delta_w: float, delta_w_last: float, opts: SolverOptions) -> float:
    if delta_w == 0.0:
        if delta_w_last == 0.0:
            return max(opts.delta_w_min, opts.kappa_w_plus_first * opts.delta_w0)
        return max(opts.delta_w_min, opts.kappa_w_minus * delta_w_last)
    return opts.kappa_w_plus * delta_w


def solve_with_inertia_correction(
    bundle: EvalBundle,
    diagonals: BarrierDiagonals,
    residuals: KktResiduals,
    mu: float,
    opts: SolverOptions,
    state: BarrierState,
    linalg: LinearAlgebra,
    timers: KernelTimers | None = None,
) -> CorrectedStep:
    """Regularize until the condensed matrix has inertia ``(n_d, 0, m)`` and solve.

    The unregularized system is tried first. Zero eigenvalues switch on
    ``delta_c = delta_c_bar * mu ** kappa_c`` for the rest of the attempts.
    ``delta_w`` then starts at ``kappa_w_plus_first * delta_w0`` (or a fraction
    of the last value that worked) and grows by ``kappa_w_plus`` per attempt.
    A failed assembly or condensation counts as a wrong inertia.
    ``state.delta_w_last`` is updated on success when ``delta_w > 0``.

    Args:
        bundle: Model quantities at the current iterate.
        diagonals: Barrier diagonals.
        residuals: Right-hand side of the 4x4 system.
        mu: Barrier parameter.
        opts: Solver options.
        state: Solve state holding ``delta_w_last``.
        linalg: Kernel suite for assembly and recovery.
        timers: Timers that factorization and solves are booked on.

    Returns:
        The step and the regularization that produced it.

    Raises:
        SingularSystemError: If ``delta_w`` would exceed ``delta_w_max``.
    """
    timers = timers or KernelTimers(enabled=False)
    n_d = bundle.Qdd.rows
    m = bundle.g_val.size + bundle.h_val.size
    target = Inertia(n_d, 0, m)
    delta_w = delta_c = 0.0
    trials: list[float] = []

    def attempt() -> _Trial | None:
        try:
            system = assemble_kkt4(bundle, diagonals, residuals, delta_w, delta_c)
            compressed = compress(system, linalg)
        except (AssemblyError, CompressionError) as exc:
            logger.debug("regularization attempt rejected: %s", exc)
            return None
        with timers.measure(KernelClass.K4):
            factors = factorize(compressed.M, opts.linear_solver)
            inertia = factors.inertia()
        return _Trial(system, compressed, factors, inertia)

    while True:
        if not trials or trials[-1] != delta_w:
            trials.append(delta_w)
        trial = attempt()
        if trial is not None and trial.inertia == target:
            if delta_w > 0.0:
                state.delta_w_last = delta_w
            return _finish(trial, delta_w, delta_c, tuple(trials), linalg, timers)
        logger.debug(
            "inertia %s at delta_w=%.3e delta_c=%.3e (want %s)",
            "unavailable" if trial is None else trial.inertia,
            delta_w,
            delta_c,
            target,
        )
        if trial is not None and trial.inertia.zero > 0 and delta_c == 0.0:
            delta_c = opts.delta_c_bar * mu**opts.kappa_c
            if delta_w == 0.0:
                continue
        delta_w = _next_delta_w(delta_w, state.delta_w_last, opts)
        if delta_w > opts.delta_w_max:
            msg = f"inertia correction gave up at delta_w={delta_w:.3e}"
            raise SingularSystemError(msg)


def _finish(
    trial: _Trial,
    delta_w: float,
    delta_c: float,
    trials: tuple[float, ...],
    linalg: LinearAlgebra,
    timers: KernelTimers,
) -> CorrectedStep:
    with timers.measure(KernelClass.K4):
        sol = trial.factors.solve(trial.compressed.rhs)
    dx_d, dy_g, dy_h = trial.compressed.split(sol)
    dx_s = recover_sparse_step(trial.system, dy_g, dy_h, linalg)
    return CorrectedStep(
        steps=(dx_s, dx_d, dy_g, dy_h),
        system=trial.system,
        compressed=trial.compressed,
        delta_w=delta_w,
        delta_c=delta_c,
        inertia=trial.inertia,
        trials=trials,
    )
