"""Symmetric indefinite ``LDL^T`` factorization with inertia (kernel class K4)."""

from mdsipm.errors import ConfigError
from mdsipm.linalg import DenseMatrix

from .bunch_kaufman import LdlFactors, bk_factorize, ldl_inertia, ldl_solve, reconstruct
from .constants import BK_ALPHA, METHOD_LAPACK, METHOD_REFERENCE, METHODS
from .lapack import LapackFactors, lapack_factorize
from .models import Inertia, SymmetricFactorization


def factorize(
    matrix: DenseMatrix, method: str = METHOD_LAPACK
) -> SymmetricFactorization:
    """Factorize ``matrix`` with the named method.

    Args:
        matrix: Symmetric matrix (lower triangle read).
        method: ``"lapack"`` (blocked) or ``"reference"`` (unblocked).

    Returns:
        Factors exposing ``solve`` and ``inertia``.

    Raises:
        ConfigError: If ``method`` is unknown.
    """
    match method:
        case "lapack":
            return lapack_factorize(matrix)
        case "reference":
            return bk_factorize(matrix)
        case _:
            msg = f"unknown factorization method {method!r} (expected one of {METHODS})"
            raise ConfigError(msg)


__all__ = [
    "BK_ALPHA",
    "METHODS",
    "METHOD_LAPACK",
    "METHOD_REFERENCE",
    "Inertia",
    "LapackFactors",
    "LdlFactors",
    "SymmetricFactorization",
    "bk_factorize",
    "factorize",
    "lapack_factorize",
    "ldl_inertia",
    "ldl_solve",
    "reconstruct",
]
