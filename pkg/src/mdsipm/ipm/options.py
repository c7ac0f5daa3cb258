"""Solver options."""

import dataclasses
from dataclasses import dataclass
from typing import Self

from mdsipm.errors import ConfigError
from mdsipm.ldl import METHODS


@dataclass(frozen=True, slots=True)
class SolverOptions:
    """Every scalar of the filter line-search interior-point method.

    Defaults are the customary values for filter line-search barrier methods.
    """

    tol: float = 1e-6
    mu0: float = 0.1
    max_iter: int = 500

    # Barrier homotopy
    tau_min: float = 0.99
    kappa_mu: float = 0.2
    theta_mu: float = 1.5
    kappa_epsilon: float = 10.0

    # Filter and line search
    gamma_theta: float = 1e-5
    gamma_phi: float = 1e-5
    s_theta: float = 1.1
    s_phi: float = 2.3
    eta_phi: float = 1e-4
    delta_switch: float = 1.0
    theta_max_fact: float = 1e4
    theta_min_fact: float = 1e-4
    alpha_min_frac: float = 1e-14
    kappa_Sigma: float = 1e10

    # Inertia correction
    delta_w0: float = 1e-4
    delta_w_min: float = 1e-20
    delta_w_max: float = 1e40
    kappa_w_plus: float = 8.0
    kappa_w_plus_first: float = 100.0
    kappa_w_minus: float = 1.0 / 3.0
    delta_c_bar: float = 1e-8
    kappa_c: float = 0.25

    # Initialization and error scaling
    kappa_1: float = 1e-2
    s_max: float = 100.0

    linear_solver: str = "lapack"
    timing: bool = True

    def __post_init__(self) -> None:
        """Validate ranges.

        Raises:
            ConfigError: If a numeric option is not positive, ``tau_min`` is
                outside (0, 1) or ``linear_solver`` is unknown.
        """
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if isinstance(value, bool) or not isinstance(value, int | float):
                continue
            if not value > 0:
                msg = f"option {field.name} must be positive, got {value}"
                raise ConfigError(msg)
        if not self.tau_min < 1.0:
            msg = f"tau_min must lie in (0, 1), got {self.tau_min}"
            raise ConfigError(msg)
        if not self.kappa_mu < 1.0 or not self.theta_mu > 1.0:
            msg = "barrier update needs kappa_mu < 1 and theta_mu > 1"
            raise ConfigError(msg)
        if self.linear_solver not in METHODS:
            msg = f"linear_solver must be one of {METHODS}, got {self.linear_solver!r}"
            raise ConfigError(msg)

    def replace(self, **changes: object) -> Self:
        """Return a validated copy with ``changes`` applied."""
        return dataclasses.replace(self, **changes)
