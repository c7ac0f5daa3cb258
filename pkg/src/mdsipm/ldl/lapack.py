"""Blocked Bunch-Kaufman through LAPACK ``dsytrf`` / ``dsytrs``."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import lapack

from mdsipm.errors import DimensionError, NumericError, SingularError
from mdsipm.linalg import DenseMatrix, Vector, as_vector
from mdsipm.linalg.models import IndexArray

from .constants import PIVOT_1X1, PIVOT_2X2
from .models import Inertia, inertia_from_blocks


@dataclass(frozen=True, slots=True)
class LapackFactors:
    """Packed ``dsytrf`` output (lower storage) plus the decoded pivot blocks."""

    n: int
    ldu: npt.NDArray[np.float64]
    ipiv: npt.NDArray[np.int32]
    starts: IndexArray
    sizes: IndexArray
    zero_tol: float

    @property
    def d_diag(self) -> Vector:
        """Diagonal of ``D``."""
        return np.diag(self.ldu).copy()

    @property
    def d_sub(self) -> Vector:
        """``D[k + 1, k]`` at 2x2 block starts, zero elsewhere."""
        sub = np.zeros(self.n)
        two = self.starts[self.sizes == PIVOT_2X2]
        sub[two] = self.ldu[two + 1, two]
        return sub

    def inertia(self) -> Inertia:
        """Eigenvalue sign counts read off ``D``."""
        return inertia_from_blocks(
            self.d_diag, self.d_sub, self.starts, self.sizes, self.zero_tol
        )

    def solve(self, b: Vector) -> Vector:
        """Solve ``A x = b`` with ``dsytrs``.

        Raises:
            DimensionError: If ``b`` has the wrong length.
            SingularError: If ``D`` has a numerically zero 1x1 pivot.
        """
        b = as_vector(b)
        if b.size != self.n:
            msg = f"right-hand side has length {b.size}, factors have {self.n}"
            raise DimensionError(msg)
        one = self.starts[self.sizes == PIVOT_1X1]
        if np.any(np.abs(self.d_diag[one]) < self.zero_tol):
            msg = "factorization has a zero 1x1 pivot"
            raise SingularError(msg)
        if self.n == 0:
            return b.copy()
        x, info = lapack.dsytrs(self.ldu, self.ipiv, b, lower=1)
        if info != 0:
            msg = f"dsytrs failed with info={info}"
            raise SingularError(msg)
        return np.asarray(x, dtype=np.float64)


def _decode_ipiv(ipiv: npt.NDArray[np.int32]) -> tuple[IndexArray, IndexArray]:
    """Pivot block starts and sizes from LAPACK's lower-storage ``ipiv``.

    A negative entry marks a 2x2 block; ``ipiv[k] == ipiv[k + 1] < 0``.
    """
    starts: list[int] = []
    sizes: list[int] = []
    k = 0
    n = ipiv.size
    while k < n:
        size = PIVOT_2X2 if ipiv[k] < 0 else PIVOT_1X1
        starts.append(k)
        sizes.append(size)
        k += size
    return np.array(starts, dtype=np.int64), np.array(sizes, dtype=np.int64)


def lapack_factorize(A: DenseMatrix) -> LapackFactors:
    """Factorize symmetric ``A`` with LAPACK's blocked Bunch-Kaufman.

    Only the lower triangle of ``A`` is read.

    Raises:
        DimensionError: If ``A`` is not square.
        NumericError: If the lower triangle holds NaN or Inf.
    """
    if A.rows != A.cols:
        msg = f"matrix must be square, got {A.shape}"
        raise DimensionError(msg)
    lower = np.tril(A.array)
    if not np.all(np.isfinite(lower)):
        msg = "matrix holds NaN or Inf entries"
        raise NumericError(msg)
    n = A.rows
    sym = lower + np.tril(lower, -1).T
    norm_inf = float(np.abs(sym).sum(axis=1).max()) if n else 0.0
    zero_tol = n * np.finfo(np.float64).eps * norm_inf
    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        ipiv = np.empty(0, np.int32)
        return LapackFactors(0, np.zeros((0, 0)), ipiv, empty, empty, 0.0)

    work, _ = lapack.dsytrf_lwork(n, lower=1)
    lwork = max(1, int(np.real(work)))
    ldu, ipiv, info = lapack.dsytrf(np.asfortranarray(lower), lower=1, lwork=lwork)
    if info < 0:
        msg = f"dsytrf rejected argument {-info}"
        raise NumericError(msg)
    # info > 0 reports an exactly zero pivot; inertia still reads it as zero.
    starts, sizes = _decode_ipiv(ipiv)
    return LapackFactors(n, ldu, ipiv, starts, sizes, zero_tol)
