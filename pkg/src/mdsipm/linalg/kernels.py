"""Kernel suites: dense vector ops (K1), mixed matrix-vector ops (K2) and
the fused ``M += A D B^T`` assembly (K3).

``LinearAlgebra`` is the abstract interface the solver calls. The sequential
suite is the reference; the threaded suite splits single kernel calls across a
worker pool and may differ from the reference only in reduction order.
"""

import functools
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mdsipm.errors import ConfigError, DimensionError, EmptyInputError, NotInteriorError

from .constants import INF_BOUND, PARALLEL_MIN_CHUNK
from .models import (
    BackendSelector,
    DenseMatrix,
    DiagonalMatrix,
    IndexArray,
    ReduceKind,
    TripletMatrix,
    Vector,
)


def _require_same_len(x: Vector, y: Vector, what: str) -> None:
    if x.shape != y.shape:
        msg = f"{what}: length mismatch {x.size} vs {y.size}"
        raise DimensionError(msg)


def _require_len(x: Vector, n: int, what: str) -> None:
    if x.ndim != 1 or x.size != n:
        msg = f"{what}: expected length {n}, got {x.size}"
        raise DimensionError(msg)


def _scaled(beta: float, y: Vector) -> Vector:
    # beta == 0 must not read y (BLAS convention: y may hold garbage).
    return np.zeros_like(y) if beta == 0.0 else beta * y


def _sdst_entries(
    A: TripletMatrix, d: Vector, B: TripletMatrix, sign: float
) -> tuple[IndexArray, IndexArray, Vector]:
    """Expand ``sign * A diag(d) B^T`` into (row, col, value) contributions.

    Entries of A and B meeting in the same inner index k each contribute
    ``sign * a_ik * d_k * b_jk`` at (i, j). Pairing is done by grouping both
    operands on k; no product matrix is formed.
    """
    q = d.size
    a_order = np.argsort(A.j, kind="stable")
    b_order = np.argsort(B.j, kind="stable")
    a_cols = A.j[a_order]

    b_counts = np.bincount(B.j, minlength=q)
    b_start = np.concatenate(([0], np.cumsum(b_counts)[:-1])).astype(np.int64)

    reps = b_counts[a_cols]
    total = int(reps.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, np.empty(0)

    a_idx = np.repeat(a_order, reps)
    first = np.repeat(np.cumsum(reps) - reps, reps)
    b_pos = np.repeat(b_start[a_cols], reps) + (np.arange(total) - first)
    b_idx = b_order[b_pos]

    k = A.j[a_idx]
    values = sign * A.v[a_idx] * d[k] * B.v[b_idx]
    return A.i[a_idx], B.i[b_idx], values


class LinearAlgebra(ABC):
    """Suite of K1-K3 kernels bound to one memory space and execution policy.

    Vector kernels return fresh arrays. ``fused_add_sdst`` accumulates into
    the target matrix it is given and returns it.
    """

    def __init__(self, selector: BackendSelector) -> None:
        """Bind the suite to ``selector``."""
        self._selector = selector

    @property
    def selector(self) -> BackendSelector:
        """The selector this suite was built for."""
        return self._selector

    @abstractmethod
    def vec_axpy(self, alpha: float, x: Vector, y: Vector) -> Vector:
        """Return ``y + alpha * x``."""

    @abstractmethod
    def vec_dot(self, x: Vector, y: Vector) -> float:
        """Return the inner product of ``x`` and ``y``."""

    @abstractmethod
    def vec_reduce(self, x: Vector, kind: ReduceKind) -> float:
        """Return a norm or extreme value of ``x``."""

    @abstractmethod
    def max_step_to_bound(
        self, x: Vector, dx: Vector, lo: Vector, up: Vector, tau: float
    ) -> float:
        """Return the largest step in (0, 1] obeying the fraction-to-boundary rule."""

    @abstractmethod
    def dense_gemv(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: DenseMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Return ``beta * y + alpha * op(A) x``."""

    @abstractmethod
    def dense_gemm(
        self,
        beta: float,
        Y: DenseMatrix,
        alpha: float,
        A: DenseMatrix,
        X: DenseMatrix,
    ) -> DenseMatrix:
        """Return ``beta * Y + alpha * A X`` as a new matrix."""

    @abstractmethod
    def triplet_times_vec(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: TripletMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Return ``beta * y + alpha * op(A) x`` with duplicates summed."""

    @abstractmethod
    def fused_add_sdst(
        self,
        M: DenseMatrix,
        A: TripletMatrix,
        d: DiagonalMatrix,
        B: TripletMatrix,
        sign: float,
        *,
        row_offset: int = 0,
        col_offset: int = 0,
        upper_only: bool = False,
    ) -> DenseMatrix:
        """Accumulate ``sign * A diag(d) B^T`` into ``M`` and return ``M``."""

    def mds_times_vec(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        Jsp: TripletMatrix,
        Jde: DenseMatrix,
        x: Vector,
    ) -> Vector:
        """Apply a mixed Jacobian ``[Jsp | Jde]`` to ``x = (x_s, x_d)``.

        The sparse block is applied first with ``beta``; the dense block then
        accumulates onto that result with factor 1.

        Raises:
            DimensionError: If the blocks and vectors do not conform.
        """
        if Jsp.rows != Jde.rows:
            msg = f"mds_times_vec: block rows differ ({Jsp.rows} vs {Jde.rows})"
            raise DimensionError(msg)
        _require_len(y, Jsp.rows, "mds_times_vec y")
        _require_len(x, Jsp.cols + Jde.cols, "mds_times_vec x")
        partial = self.triplet_times_vec(beta, y, alpha, Jsp, x[: Jsp.cols])
        return self.dense_gemv(1.0, partial, alpha, Jde, x[Jsp.cols :])


class SequentialLinearAlgebra(LinearAlgebra):
    """Reference kernels, one numpy call per operation."""

    def vec_axpy(self, alpha: float, x: Vector, y: Vector) -> Vector:
        """Return ``y + alpha * x``.

        Raises:
            DimensionError: If ``x`` and ``y`` differ in length.
        """
        _require_same_len(x, y, "vec_axpy")
        return y + alpha * x

    def vec_dot(self, x: Vector, y: Vector) -> float:
        """Return ``sum(x * y)``.

        Raises:
            DimensionError: If ``x`` and ``y`` differ in length.
        """
        _require_same_len(x, y, "vec_dot")
        return float(np.dot(x, y))

    def vec_reduce(self, x: Vector, kind: ReduceKind) -> float:
        """Return the reduction ``kind`` of ``x``; norms of empty vectors are 0.

        Raises:
            EmptyInputError: For MIN/MAX of an empty vector.
        """
        match kind:
            case ReduceKind.INF_NORM:
                return float(np.max(np.abs(x))) if x.size else 0.0
            case ReduceKind.ONE_NORM:
                return float(np.sum(np.abs(x)))
            case ReduceKind.TWO_NORM:
                return float(np.linalg.norm(x))
            case ReduceKind.MIN | ReduceKind.MAX:
                if x.size == 0:
                    msg = f"{kind} of an empty vector"
                    raise EmptyInputError(msg)
                return float(np.min(x) if kind is ReduceKind.MIN else np.max(x))

    def max_step_to_bound(
        self, x: Vector, dx: Vector, lo: Vector, up: Vector, tau: float
    ) -> float:
        """Return ``min(1, tau * gap_i / |dx_i|)`` over bound-approaching components.

        Bounds at or beyond ``INF_BOUND`` in magnitude never restrict the step.

        Raises:
            ConfigError: If ``tau`` is not in (0, 1).
            DimensionError: If the vectors differ in length.
            NotInteriorError: If ``x`` touches or crosses a finite bound.
        """
        if not 0.0 < tau < 1.0:
            msg = f"tau must lie in (0, 1), got {tau}"
            raise ConfigError(msg)
        for other, name in ((dx, "dx"), (lo, "lo"), (up, "up")):
            _require_same_len(x, other, f"max_step_to_bound {name}")

        has_lo = lo > -INF_BOUND
        has_up = up < INF_BOUND
        gap_lo = x - lo
        gap_up = up - x
        if np.any(has_lo & ~(gap_lo > 0)) or np.any(has_up & ~(gap_up > 0)):
            msg = "point is not strictly inside its finite bounds"
            raise NotInteriorError(msg)

        alpha = 1.0
        toward_lo = has_lo & (dx < 0)
        if toward_lo.any():
            alpha = min(alpha, float(np.min(tau * gap_lo[toward_lo] / -dx[toward_lo])))
        toward_up = has_up & (dx > 0)
        if toward_up.any():
            alpha = min(alpha, float(np.min(tau * gap_up[toward_up] / dx[toward_up])))
        return alpha

    def dense_gemv(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: DenseMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Return ``beta * y + alpha * op(A) x``.

        Raises:
            DimensionError: If ``A``, ``x`` and ``y`` do not conform.
        """
        n_in, n_out = (A.rows, A.cols) if transpose else (A.cols, A.rows)
        _require_len(x, n_in, "dense_gemv x")
        _require_len(y, n_out, "dense_gemv y")
        out = _scaled(beta, y)
        if alpha != 0.0 and A.data.size:
            op = A.array.T if transpose else A.array
            out += alpha * (op @ x)
        return out

    def dense_gemm(
        self,
        beta: float,
        Y: DenseMatrix,
        alpha: float,
        A: DenseMatrix,
        X: DenseMatrix,
    ) -> DenseMatrix:
        """Return ``beta * Y + alpha * A X``.

        Raises:
            DimensionError: If the three shapes do not conform.
        """
        if A.cols != X.rows or Y.shape != (A.rows, X.cols):
            msg = f"dense_gemm: cannot combine Y{Y.shape}, A{A.shape}, X{X.shape}"
            raise DimensionError(msg)
        out = _scaled(beta, Y.data)
        if alpha != 0.0 and A.cols:
            out += alpha * (A.array @ X.array).reshape(-1)
        return DenseMatrix(Y.rows, Y.cols, out)

    def triplet_times_vec(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: TripletMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Return ``beta * y + alpha * op(A) x``; duplicate entries add up.

        Raises:
            MalformedMatrixError: If ``A`` stores out-of-range indices.
            DimensionError: If ``A``, ``x`` and ``y`` do not conform.
        """
        A.check_indices()
        src, dst, n_in, n_out = (
            (A.i, A.j, A.rows, A.cols) if transpose else (A.j, A.i, A.cols, A.rows)
        )
        _require_len(x, n_in, "triplet_times_vec x")
        _require_len(y, n_out, "triplet_times_vec y")
        out = _scaled(beta, y)
        if alpha != 0.0 and A.nnz:
            out += alpha * np.bincount(dst, weights=A.v * x[src], minlength=n_out)
        return out

    def fused_add_sdst(
        self,
        M: DenseMatrix,
        A: TripletMatrix,
        d: DiagonalMatrix,
        B: TripletMatrix,
        sign: float,
        *,
        row_offset: int = 0,
        col_offset: int = 0,
        upper_only: bool = False,
    ) -> DenseMatrix:
        """Accumulate ``sign * A diag(d) B^T`` into the block of ``M`` at the offsets.

        With ``upper_only`` only contributions on or above the diagonal of
        ``M`` are written, for symmetric targets read from the upper triangle.

        Raises:
            MalformedMatrixError: If ``A`` or ``B`` stores out-of-range indices.
            DimensionError: If the operands do not conform or the block does
                not fit in ``M``.
        """
        rows, cols, values = self._sdst_contributions(
            M, A, d, B, sign, row_offset, col_offset, upper_only=upper_only
        )
        np.add.at(M.array, (rows, cols), values)
        return M

    @staticmethod
    def _sdst_contributions(
        M: DenseMatrix,
        A: TripletMatrix,
        d: DiagonalMatrix,
        B: TripletMatrix,
        sign: float,
        row_offset: int,
        col_offset: int,
        *,
        upper_only: bool,
    ) -> tuple[IndexArray, IndexArray, Vector]:
        A.check_indices()
        B.check_indices()
        if A.cols != d.n or B.cols != d.n:
            msg = f"fused_add_sdst: inner sizes {A.cols}, {d.n}, {B.cols} differ"
            raise DimensionError(msg)
        if (
            row_offset < 0
            or col_offset < 0
            or row_offset + A.rows > M.rows
            or col_offset + B.rows > M.cols
        ):
            msg = (
                f"fused_add_sdst: {A.rows}x{B.rows} block at "
                f"({row_offset}, {col_offset}) does not fit in {M.shape}"
            )
            raise DimensionError(msg)
        rows, cols, values = _sdst_entries(A, d.d, B, sign)
        rows = rows + row_offset
        cols = cols + col_offset
        if upper_only:
            keep = rows <= cols
            rows, cols, values = rows[keep], cols[keep], values[keep]
        return rows, cols, values


@functools.cache
def _shared_pool(workers: int) -> ThreadPoolExecutor:
    return ThreadPoolExecutor(max_workers=workers, thread_name_prefix="mdsipm-kernel")


class ThreadedLinearAlgebra(SequentialLinearAlgebra):
    """Host kernels that split one call into chunks run on a thread pool.

    numpy releases the GIL inside its inner loops, so chunked dot products,
    matrix-vector products and scatter-adds overlap. Small inputs fall back
    to the sequential code path.
    """

    def __init__(self, selector: BackendSelector, workers: int) -> None:
        """Bind the suite to ``selector`` with ``workers`` threads.

        Raises:
            ConfigError: If ``workers`` is less than 1.
        """
        if workers < 1:
            msg = f"worker count must be positive, got {workers}"
            raise ConfigError(msg)
        super().__init__(selector)
        self._workers = workers

    @property
    def workers(self) -> int:
        """Number of worker threads."""
        return self._workers

    def _bounds(self, n: int) -> list[tuple[int, int]]:
        parts = min(self._workers, max(1, n // PARALLEL_MIN_CHUNK))
        edges = np.linspace(0, n, parts + 1).astype(int)
        return list(zip(edges[:-1].tolist(), edges[1:].tolist(), strict=True))

    def vec_dot(self, x: Vector, y: Vector) -> float:
        """Chunked inner product; partial sums are added in chunk order.

        Raises:
            DimensionError: If ``x`` and ``y`` differ in length.
        """
        _require_same_len(x, y, "vec_dot")
        chunks = self._bounds(x.size)
        if len(chunks) == 1:
            return super().vec_dot(x, y)
        parts = _shared_pool(self._workers).map(
            lambda b: float(np.dot(x[b[0] : b[1]], y[b[0] : b[1]])), chunks
        )
        return float(sum(parts))

    def vec_reduce(self, x: Vector, kind: ReduceKind) -> float:
        """Chunked reduction; see ``SequentialLinearAlgebra.vec_reduce``.

        Raises:
            EmptyInputError: For MIN/MAX of an empty vector.
        """
        chunks = self._bounds(x.size)
        if len(chunks) == 1:
            return super().vec_reduce(x, kind)
        pool = _shared_pool(self._workers)
        match kind:
            case ReduceKind.TWO_NORM:
                squares = pool.map(
                    lambda b: float(np.dot(x[b[0] : b[1]], x[b[0] : b[1]])), chunks
                )
                return float(np.sqrt(sum(squares)))
            case ReduceKind.ONE_NORM:
                sums = pool.map(lambda b: float(np.sum(np.abs(x[b[0] : b[1]]))), chunks)
                return float(sum(sums))
            case _:
                reduce_chunk = super().vec_reduce
                values = list(
                    pool.map(lambda b: reduce_chunk(x[b[0] : b[1]], kind), chunks)
                )
                return min(values) if kind is ReduceKind.MIN else max(values)

    def dense_gemv(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: DenseMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Row-blocked (or column-blocked when transposed) matrix-vector product.

        Raises:
            DimensionError: If ``A``, ``x`` and ``y`` do not conform.
        """
        n_in, n_out = (A.rows, A.cols) if transpose else (A.cols, A.rows)
        _require_len(x, n_in, "dense_gemv x")
        _require_len(y, n_out, "dense_gemv y")
        chunks = self._bounds(A.data.size) if n_out else []
        if len(chunks) <= 1 or alpha == 0.0:
            return super().dense_gemv(beta, y, alpha, A, x, transpose=transpose)
        out = _scaled(beta, y)
        mat = A.array

        def block(bounds: tuple[int, int]) -> None:
            lo, hi = bounds
            op = mat[:, lo:hi].T if transpose else mat[lo:hi]
            out[lo:hi] += alpha * (op @ x)

        list(_shared_pool(self._workers).map(block, self._bounds_out(n_out)))
        return out

    def _bounds_out(self, n_out: int) -> list[tuple[int, int]]:
        parts = max(1, min(self._workers, n_out))
        edges = np.linspace(0, n_out, parts + 1).astype(int)
        pairs = zip(edges[:-1], edges[1:], strict=True)
        return [(int(lo), int(hi)) for lo, hi in pairs if hi > lo]

    def triplet_times_vec(
        self,
        beta: float,
        y: Vector,
        alpha: float,
        A: TripletMatrix,
        x: Vector,
        *,
        transpose: bool = False,
    ) -> Vector:
        """Entry-chunked sparse product; per-chunk results are summed in order.

        Raises:
            MalformedMatrixError: If ``A`` stores out-of-range indices.
            DimensionError: If ``A``, ``x`` and ``y`` do not conform.
        """
        chunks = self._bounds(A.nnz)
        if len(chunks) == 1 or alpha == 0.0:
            return super().triplet_times_vec(beta, y, alpha, A, x, transpose=transpose)
        A.check_indices()
        src, dst, n_in, n_out = (
            (A.i, A.j, A.rows, A.cols) if transpose else (A.j, A.i, A.cols, A.rows)
        )
        _require_len(x, n_in, "triplet_times_vec x")
        _require_len(y, n_out, "triplet_times_vec y")

        def part(bounds: tuple[int, int]) -> Vector:
            lo, hi = bounds
            return np.bincount(
                dst[lo:hi], weights=A.v[lo:hi] * x[src[lo:hi]], minlength=n_out
            )

        total = np.zeros(n_out)
        for partial in _shared_pool(self._workers).map(part, chunks):
            total += partial
        return _scaled(beta, y) + alpha * total

    def fused_add_sdst(
        self,
        M: DenseMatrix,
        A: TripletMatrix,
        d: DiagonalMatrix,
        B: TripletMatrix,
        sign: float,
        *,
        row_offset: int = 0,
        col_offset: int = 0,
        upper_only: bool = False,
    ) -> DenseMatrix:
        """Scatter the fused product with each worker owning a band of rows of ``M``.

        Raises:
            MalformedMatrixError: If ``A`` or ``B`` stores out-of-range indices.
            DimensionError: If the operands do not conform or the block does
                not fit in ``M``.
        """
        rows, cols, values = self._sdst_contributions(
            M, A, d, B, sign, row_offset, col_offset, upper_only=upper_only
        )
        if len(self._bounds(values.size)) == 1:
            np.add.at(M.array, (rows, cols), values)
            return M
        target = M.array

        def band(bounds: tuple[int, int]) -> None:
            lo, hi = bounds
            mask = (rows >= lo) & (rows < hi)
            np.add.at(target, (rows[mask], cols[mask]), values[mask])

        list(_shared_pool(self._workers).map(band, self._bounds_out(M.rows)))
        return M
