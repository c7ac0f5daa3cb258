"""Unblocked Bunch-Kaufman ``LDL^T`` factorization (reference path).

Column-by-column factorization of a symmetric indefinite matrix with 1x1
and 2x2 diagonal pivots, following the lower-triangular decision tree of
LAPACK's unblocked routine. Only the lower triangle of the input is read.
"""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import solve_triangular

from mdsipm.errors import DimensionError, NumericError, SingularError
from mdsipm.linalg import DenseMatrix, Vector, as_vector
from mdsipm.linalg.models import IndexArray

from .constants import BK_ALPHA, PIVOT_1X1, PIVOT_2X2
from .models import Inertia, inertia_from_blocks, solve_block_diagonal

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class LdlFactors:
    """``A = P L D L^T P^T`` from the unblocked factorization.

    ``perm`` defines ``P`` by ``(P^T A P)[i, j] = A[perm[i], perm[j]]``.
    ``D`` is kept as its diagonal plus the subdiagonal entry of each 2x2
    block; ``starts`` and ``sizes`` list the pivot blocks in order.

    Attributes:
        n: Dimension.
        perm: Symmetric permutation.
        L: Unit lower triangular factor.
        d_diag: Diagonal of ``D``.
        d_sub: ``d_sub[k] = D[k + 1, k]``, nonzero only at 2x2 block starts.
        starts: First index of every pivot block.
        sizes: Size (1 or 2) of every pivot block.
        zero_tol: Magnitude below which a 1x1 pivot counts as zero.
        flagged: Starts of 2x2 blocks whose determinant is not negative.
    """

    n: int
    perm: IndexArray
    L: DenseMatrix
    d_diag: Vector
    d_sub: Vector
    starts: IndexArray
    sizes: IndexArray
    zero_tol: float
    flagged: tuple[int, ...] = ()

    @property
    def D(self) -> DenseMatrix:
        """Block diagonal ``D`` as a dense matrix."""
        d = np.diag(self.d_diag)
        if self.n > 1:
            sub = self.d_sub[:-1]
            d += np.diag(sub, -1) + np.diag(sub, 1)
        return DenseMatrix(self.n, self.n, d.reshape(-1))

    def solve(self, b: Vector) -> Vector:
        """Solve ``A x = b``; see `ldl_solve`."""
        return ldl_solve(self, b)

    def inertia(self) -> Inertia:
        """Inertia of ``A``; see `ldl_inertia`."""
        return ldl_inertia(self)


def _symmetric_from_lower(A: DenseMatrix) -> npt.NDArray[np.float64]:
    if A.rows != A.cols:
        msg = f"matrix must be square, got {A.shape}"
        raise DimensionError(msg)
    lower = np.tril(A.array)
    if not np.all(np.isfinite(lower)):
        msg = "matrix holds NaN or Inf entries"
        raise NumericError(msg)
    return lower + np.tril(lower, -1).T


def _swap(
    W: npt.NDArray[np.float64], L: npt.NDArray[np.float64], k: int, a: int, b: int
) -> None:
    """Swap index ``a`` and ``b`` in the trailing block and in computed rows of L."""
    W[[a, b], k:] = W[[b, a], k:]
    W[k:, [a, b]] = W[k:, [b, a]]
    L[[a, b], :k] = L[[b, a], :k]


def _choose_pivot(W: npt.NDArray[np.float64], k: int) -> tuple[int, int]:
    """Return ``(pivot size, index to bring to the pivot position)``."""
    n = W.shape[0]
    absakk = abs(W[k, k])
    if k == n - 1:
        return PIVOT_1X1, k
    below = np.abs(W[k + 1 :, k])
    imax = k + 1 + int(np.argmax(below))
    colmax = float(below[imax - k - 1])

    if absakk >= BK_ALPHA * colmax:
        return PIVOT_1X1, k
    row = np.abs(W[imax, k:])
    row[imax - k] = 0.0
    rowmax = float(row.max())
    if absakk * rowmax >= BK_ALPHA * colmax * colmax:
        return PIVOT_1X1, k
    if abs(W[imax, imax]) >= BK_ALPHA * rowmax:
        return PIVOT_1X1, imax
    return PIVOT_2X2, imax


def bk_factorize(A: DenseMatrix) -> LdlFactors:
    """Factorize symmetric ``A`` as ``P L D L^T P^T`` with Bunch-Kaufman pivoting.

    Args:
        A: Square matrix; only its lower triangle is read.

    Returns:
        The factors. Exactly zero columns yield a zero 1x1 pivot rather than
        an error, so the inertia of singular matrices can still be read.

    Raises:
        DimensionError: If ``A`` is not square.
        NumericError: If the lower triangle holds NaN or Inf.
    """
    W = _symmetric_from_lower(A)
    n = W.shape[0]
    norm_inf = float(np.abs(W).sum(axis=1).max()) if n else 0.0
    zero_tol = n * np.finfo(np.float64).eps * norm_inf

    L = np.eye(n)
    perm = np.arange(n)
    d_diag = np.zeros(n)
    d_sub = np.zeros(n)
    starts: list[int] = []
    sizes: list[int] = []
    flagged: list[int] = []

    k = 0
    while k < n:
        size, kp = _choose_pivot(W, k)
        kk = k + size - 1
        if kp != kk:
            _swap(W, L, k, kk, kp)
            perm[[kk, kp]] = perm[[kp, kk]]

        if size == PIVOT_1X1:
            d = W[k, k]
            d_diag[k] = d
            col = W[k + 1 :, k]
            if d != 0.0 and col.size:
                L[k + 1 :, k] = col / d
                W[k + 1 :, k + 1 :] -= np.outer(col, col) / d
        else:
            block = W[k : k + 2, k : k + 2]
            d_diag[k], d_diag[k + 1] = block[0, 0], block[1, 1]
            d_sub[k] = block[1, 0]
            det = block[0, 0] * block[1, 1] - block[1, 0] * block[1, 0]
            if not det < 0:
                flagged.append(k)
            cols = W[k + 2 :, k : k + 2]
            if cols.size:
                mult = np.linalg.solve(block, cols.T).T
                L[k + 2 :, k : k + 2] = mult
                update = mult @ cols.T
                W[k + 2 :, k + 2 :] -= 0.5 * (update + update.T)
        starts.append(k)
        sizes.append(size)
        k += size

    if flagged:
        logger.debug("2x2 pivots without negative determinant at %s", flagged)
    return LdlFactors(
        n=n,
        perm=perm,
        L=DenseMatrix(n, n, L.reshape(-1)),
        d_diag=d_diag,
        d_sub=d_sub,
        starts=np.array(starts, dtype=np.int64),
        sizes=np.array(sizes, dtype=np.int64),
        zero_tol=zero_tol,
        flagged=tuple(flagged),
    )


def ldl_inertia(F: LdlFactors) -> Inertia:
    """Eigenvalue sign counts of the factorized matrix, read off ``D``.

    1x1 pivots below ``F.zero_tol`` in magnitude count as zero.
    """
    return inertia_from_blocks(F.d_diag, F.d_sub, F.starts, F.sizes, F.zero_tol)


def ldl_solve(F: LdlFactors, b: Vector) -> Vector:
    """Solve ``A x = b`` using the factors of ``A``.

    Args:
        F: Factors from `bk_factorize`.
        b: Right-hand side of length ``F.n``.

    Returns:
        The solution ``x``.

    Raises:
        DimensionError: If ``b`` has the wrong length.
        SingularError: If a 1x1 pivot is numerically zero or a 2x2 block
            is exactly singular.
    """
    b = as_vector(b)
    if b.size != F.n:
        msg = f"right-hand side has length {b.size}, factors have {F.n}"
        raise DimensionError(msg)
    one = F.starts[F.sizes == PIVOT_1X1]
    if np.any(np.abs(F.d_diag[one]) < F.zero_tol):
        msg = "factorization has a zero 1x1 pivot"
        raise SingularError(msg)
    two = F.starts[F.sizes == PIVOT_2X2]
    if np.any(F.d_diag[two] * F.d_diag[two + 1] - F.d_sub[two] ** 2 == 0):
        msg = "factorization has a singular 2x2 pivot"
        raise SingularError(msg)
    if F.n == 0:
        return b.copy()

    L = F.L.array
    w = solve_triangular(L, b[F.perm], lower=True, unit_diagonal=True)
    w = solve_block_diagonal(F.d_diag, F.d_sub, F.starts, F.sizes, w)
    w = solve_triangular(L, w, lower=True, unit_diagonal=True, trans="T")
    x = np.empty_like(w)
    x[F.perm] = w
    return x


def reconstruct(F: LdlFactors) -> DenseMatrix:
    """Multiply the factors back together: ``P L D L^T P^T``."""
    L = F.L.array
    core = L @ F.D.array @ L.T
    out = np.empty_like(core)
    out[np.ix_(F.perm, F.perm)] = core
    return DenseMatrix(F.n, F.n, out.reshape(-1))
