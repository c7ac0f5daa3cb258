"""Matrix containers and backend selection types."""

from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum, auto
from typing import Self

import numpy as np
import numpy.typing as npt

from mdsipm.errors import DimensionError, MalformedMatrixError

type Vector = npt.NDArray[np.float64]
type IndexArray = npt.NDArray[np.int64]


def as_vector(values: npt.ArrayLike) -> Vector:
    """Return ``values`` as a contiguous 1-D float64 array (copying if needed).

    Raises:
        DimensionError: If ``values`` is not one-dimensional.
    """
    vec = np.ascontiguousarray(values, dtype=np.float64)
    if vec.ndim != 1:
        msg = f"expected a 1-D vector, got shape {vec.shape}"
        raise DimensionError(msg)
    return vec


@dataclass(frozen=True, slots=True)
class DenseMatrix:
    """Dense matrix stored as one contiguous row-major block.

    Element ``(i, j)`` lives at ``data[i * cols + j]``.
    """

    rows: int
    cols: int
    data: Vector

    def __post_init__(self) -> None:
        """Validate that the flat storage matches the declared shape.

        Raises:
            DimensionError: If ``data`` does not hold ``rows * cols`` entries.
        """
        if self.rows < 0 or self.cols < 0:
            msg = f"negative shape ({self.rows}, {self.cols})"
            raise DimensionError(msg)
        if self.data.ndim != 1 or self.data.size != self.rows * self.cols:
            msg = (
                f"storage of size {self.data.size} does not match "
                f"shape ({self.rows}, {self.cols})"
            )
            raise DimensionError(msg)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        """Return a zero matrix of the given shape."""
        return cls(rows, cols, np.zeros(rows * cols))

    @classmethod
    def identity(cls, n: int) -> Self:
        """Return the ``n`` by ``n`` identity."""
        return cls(n, n, np.eye(n).reshape(-1))

    @classmethod
    def from_array(cls, values: npt.ArrayLike) -> Self:
        """Copy a 2-D array-like into row-major storage.

        Raises:
            DimensionError: If ``values`` is not two-dimensional.
        """
        arr = np.array(values, dtype=np.float64, order="C", ndmin=2)
        if arr.ndim != 2:  # noqa: PLR2004
            msg = f"expected a 2-D array, got shape {arr.shape}"
            raise DimensionError(msg)
        return cls(arr.shape[0], arr.shape[1], arr.reshape(-1))

    @property
    def shape(self) -> tuple[int, int]:
        """Matrix shape as ``(rows, cols)``."""
        return self.rows, self.cols

    @property
    def array(self) -> npt.NDArray[np.float64]:
        """Two-dimensional view sharing storage with ``data``."""
        return self.data.reshape(self.rows, self.cols)

    def get(self, i: int, j: int) -> float:
        """Read element ``(i, j)``."""
        return float(self.data[i * self.cols + j])

    def set(self, i: int, j: int, value: float) -> None:
        """Write ``value`` at ``(i, j)``."""
        self.data[i * self.cols + j] = value

    def copy(self) -> Self:
        """Return a deep copy."""
        return type(self)(self.rows, self.cols, self.data.copy())


@dataclass(frozen=True, slots=True)
class TripletMatrix:
    """Sparse matrix in triplet (coordinate) form.

    Duplicate ``(i, j)`` entries are allowed and summed wherever the matrix is
    applied. Entry order is kept exactly as given.
    """

    rows: int
    cols: int
    i: IndexArray
    j: IndexArray
    v: Vector

    def __post_init__(self) -> None:
        """Coerce index/value arrays and check their lengths agree.

        Raises:
            DimensionError: If the three arrays differ in length.
        """
        object.__setattr__(self, "i", np.asarray(self.i, dtype=np.int64).ravel())
        object.__setattr__(self, "j", np.asarray(self.j, dtype=np.int64).ravel())
        object.__setattr__(self, "v", np.asarray(self.v, dtype=np.float64).ravel())
        if not self.i.size == self.j.size == self.v.size:
            msg = (
                f"triplet arrays differ in length: "
                f"{self.i.size}, {self.j.size}, {self.v.size}"
            )
            raise DimensionError(msg)

    @classmethod
    def empty(cls, rows: int, cols: int) -> Self:
        """Return a matrix with no stored entries."""
        return cls(rows, cols, np.empty(0, np.int64), np.empty(0, np.int64), [])

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, entries: Iterable[tuple[int, int, float]]
    ) -> Self:
        """Build from ``(i, j, value)`` tuples."""
        items = list(entries)
        if not items:
            return cls.empty(rows, cols)
        ii, jj, vv = zip(*items, strict=True)
        return cls(rows, cols, np.array(ii), np.array(jj), np.array(vv))

    @classmethod
    def from_dense(cls, values: npt.ArrayLike) -> Self:
        """Collect the nonzero entries of a dense 2-D array, row by row."""
        arr = np.asarray(values, dtype=np.float64)
        ii, jj = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], ii, jj, arr[ii, jj])

    @property
    def nnz(self) -> int:
        """Number of stored entries (duplicates counted separately)."""
        return int(self.v.size)

    @property
    def shape(self) -> tuple[int, int]:
        """Matrix shape as ``(rows, cols)``."""
        return self.rows, self.cols

    def check_indices(self) -> None:
        """Verify every stored index lies inside the declared shape.

        Raises:
            MalformedMatrixError: If any row or column index is out of range.
        """
        if self.nnz == 0:
            return
        if (
            self.i.min() < 0
            or self.j.min() < 0
            or self.i.max() >= self.rows
            or self.j.max() >= self.cols
        ):
            msg = f"triplet index out of range for shape ({self.rows}, {self.cols})"
            raise MalformedMatrixError(msg)

    def transpose(self) -> Self:
        """Return the transpose (entries keep their order)."""
        return type(self)(self.cols, self.rows, self.j, self.i, self.v)

    def to_dense(self) -> DenseMatrix:
        """Densify, summing duplicates."""
        self.check_indices()
        out = DenseMatrix.zeros(self.rows, self.cols)
        np.add.at(out.array, (self.i, self.j), self.v)
        return out


@dataclass(frozen=True, slots=True)
class DiagonalMatrix:
    """Diagonal matrix ``diag(d)``."""

    d: Vector

    @property
    def n(self) -> int:
        """Dimension."""
        return int(self.d.size)

    def is_positive(self) -> bool:
        """True if every diagonal entry is strictly positive."""
        return bool(np.all(self.d > 0))


class MemorySpace(StrEnum):
    """Where kernel data lives."""

    DEFAULT = auto()  # Reference implementation
    HOST = auto()
    DEVICE = auto()  # No device backend is built in
    UNIFIED = auto()


class Execution(StrEnum):
    """How a kernel call is executed."""

    SEQUENTIAL = auto()
    PARALLEL = auto()


class ReduceKind(StrEnum):
    """Reductions offered by ``vec_reduce``."""

    INF_NORM = auto()
    ONE_NORM = auto()
    TWO_NORM = auto()
    MIN = auto()
    MAX = auto()


@dataclass(frozen=True, slots=True)
class BackendSelector:
    """Memory space and execution policy for a kernel suite."""

    memory_space: MemorySpace = MemorySpace.DEFAULT
    execution: Execution = Execution.SEQUENTIAL
