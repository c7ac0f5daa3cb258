"""Wall-clock timers per kernel class and a timing kernel-suite wrapper."""

import time
from collections.abc import Iterator
from contextlib import contextmanager
from enum import StrEnum

from mdsipm.linalg import (
    DenseMatrix,
    DiagonalMatrix,
    LinearAlgebra,
    ReduceKind,
    TripletMatrix,
    Vector,
)


class KernelClass(StrEnum):
    """Kernel taxonomy used for timing."""

    K1 = "K1"  # dense vector ops and reductions
    K2 = "K2"  # dense / sparse / mixed matrix-vector products
    K3 = "K3"  # fused M += A D B^T assembly and dense matrix products
    K4 = "K4"  # dense factorization and solves


class KernelTimers:
    """Accumulated seconds per kernel class; disabled timers measure nothing."""

    def __init__(self, *, enabled: bool = True) -> None:
        """Create zeroed timers."""
        self.enabled = enabled
        self._totals = dict.fromkeys(KernelClass, 0.0)

    @contextmanager
    def measure(self, kind: KernelClass) -> Iterator[None]:
        """Add the wall time of the ``with`` body to ``kind``."""
        if not self.enabled:
            yield
            return
        start = time.perf_counter()
        try:
            yield
        finally:
            self._totals[kind] += time.perf_counter() - start

    def snapshot(self) -> dict[KernelClass, float]:
        """Copy of the current totals."""
        return dict(self._totals)

    def reset(self) -> None:
        """Zero every total."""
        self._totals = dict.fromkeys(KernelClass, 0.0)


class TimedLinearAlgebra(LinearAlgebra):
    """Delegates to another suite and books every call on its kernel class."""

    def __init__(self, inner: LinearAlgebra, timers: KernelTimers) -> None:
        """Wrap ``inner``."""
        super().__init__(inner.selector)
        self.inner = inner
        self.timers = timers

    def vec_axpy(self, alpha: float, x: Vector, y: Vector) -> Vector:
        """Timed `vec_axpy` (K1)."""
        with self.timers.measure(KernelClass.K1):
            return self.inner.vec_axpy(alpha, x, y)

    def vec_dot(self, x: Vector, y: Vector) -> float:
        """Timed `vec_dot` (K1)."""
        with self.timers.measure(KernelClass.K1):
            return self.inner.vec_dot(x, y)

    def vec_reduce(self, x: Vector, kind: ReduceKind) -> float:
        """Timed `vec_reduce` (K1)."""
        with self.timers.measure(KernelClass.K1):
            return self.inner.vec_reduce(x, kind)

    def max_step_to_bound(
        self, x: Vector, dx: Vector, lo: Vector, up: Vector, tau: float
    ) -> float:
        """Timed `max_step_to_bound` (K1)."""
        with self.timers.measure(KernelClass.K1):
            return self.inner.max_step_to_bound(x, dx, lo, up, tau)

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
        """Timed `dense_gemv` (K2)."""
        with self.timers.measure(KernelClass.K2):
            return self.inner.dense_gemv(beta, y, alpha, A, x, transpose=transpose)

    def dense_gemm(
        self,
        beta: float,
        Y: DenseMatrix,
        alpha: float,
        A: DenseMatrix,
        X: DenseMatrix,
    ) -> DenseMatrix:
        """Timed `dense_gemm` (K3)."""
        with self.timers.measure(KernelClass.K3):
            return self.inner.dense_gemm(beta, Y, alpha, A, X)

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
        """Timed `triplet_times_vec` (K2)."""
        with self.timers.measure(KernelClass.K2):
            return self.inner.triplet_times_vec(
                beta, y, alpha, A, x, transpose=transpose
            )

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
        """Timed `fused_add_sdst` (K3)."""
        with self.timers.measure(KernelClass.K3):
            return self.inner.fused_add_sdst(
                M,
                A,
                d,
                B,
                sign,
                row_offset=row_offset,
                col_offset=col_offset,
                upper_only=upper_only,
            )
