"""Structural validation of problems (report based, never raises)."""

import numpy as np

from mdsipm.linalg import INF_BOUND, Vector

from .problem import MdsNlpProblem


def _range_violations(label: str, unit: str, lo: Vector, up: Vector) -> list[str]:
    problems: list[str] = []
    for i in np.flatnonzero(~(lo < up)).tolist():
        problems.append(f"{label} bounds not strictly ordered at {unit} {i}")
    free = (lo <= -INF_BOUND) & (up >= INF_BOUND)
    for i in np.flatnonzero(free).tolist():
        problems.append(f"no finite bound on {unit} {i}")
    return problems


def validate_problem(p: MdsNlpProblem) -> list[str]:
    """Check dimensions, bound ordering and finiteness of ``p``.

    Every inequality and every variable needs ``lo < up`` with at least one
    finite side, and ``g_E`` must be finite. Nonnegativity of the sparse Hessian diagonal is
    checked at the starting point with zero multipliers.

    Returns:
        Human-readable violations; empty when the problem is valid.
    """
    d = p.dims
    b = p.bounds
    report: list[str] = []
    shapes = {
        "xd_lo": (b.xd_lo, d.n_d),
        "xd_up": (b.xd_up, d.n_d),
        "xs_lo": (b.xs_lo, d.n_s),
        "xs_up": (b.xs_up, d.n_s),
        "h_lo": (b.h_lo, d.m_I),
        "h_up": (b.h_up, d.m_I),
        "g_E": (b.g_E, d.m_E),
    }
    for name, (vec, size) in shapes.items():
        if vec.shape != (size,):
            report.append(f"{name} has shape {vec.shape}, expected ({size},)")
    if report:
        return report

    report += _range_violations("h", "inequality", b.h_lo, b.h_up)
    report += _range_violations("x_d", "dense variable", b.xd_lo, b.xd_up)
    report += _range_violations("x_s", "sparse variable", b.xs_lo, b.xs_up)
    if not np.all(np.isfinite(b.g_E)):
        report.append("g_E has non-finite entries")

    x_d, x_s = p.starting_point()
    _, qss = p.hessian(x_d, x_s, np.zeros(d.m_E), np.zeros(d.m_I))
    if np.any(qss < 0):
        report.append("sparse Hessian diagonal has negative entries")
    return report
