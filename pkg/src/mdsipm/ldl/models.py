"""Inertia triple, the factorization protocol and block-diagonal helpers."""

from dataclasses import dataclass
from typing import Protocol, Self

import numpy as np

from mdsipm.linalg import Vector
from mdsipm.linalg.models import IndexArray

from .constants import PIVOT_1X1, PIVOT_2X2


@dataclass(frozen=True, slots=True)
class Inertia:
    """Counts of positive, zero and negative eigenvalues."""

    pos: int
    zero: int
    neg: int

    @property
    def n(self) -> int:
        """Dimension the counts add up to."""
        return self.pos + self.zero + self.neg

    def __add__(self, other: Self) -> Self:
        """Componentwise sum (inertia of a block matrix from its Schur pieces)."""
        return type(self)(
            self.pos + other.pos, self.zero + other.zero, self.neg + other.neg
        )

    def __str__(self) -> str:
        return f"({self.pos}, {self.zero}, {self.neg})"


class SymmetricFactorization(Protocol):
    """What the solver needs from a factorized symmetric matrix."""

    @property
    def n(self) -> int:
        """Dimension."""
        ...

    def solve(self, b: Vector) -> Vector:
        """Solve ``A x = b``."""
        ...

    def inertia(self) -> Inertia:
        """Eigenvalue sign counts of ``A``."""
        ...


def inertia_from_blocks(
    d_diag: Vector, d_sub: Vector, starts: IndexArray, sizes: IndexArray, tol: float
) -> Inertia:
    """Count eigenvalue signs of a block diagonal ``D``.

    A 1x1 block counts as zero when its magnitude is below ``tol``. A 2x2
    block with negative determinant holds one eigenvalue of each sign;
    any other 2x2 block is classified by its own eigenvalues.
    """
    one = starts[sizes == PIVOT_1X1]
    vals = d_diag[one]
    pos = int(np.count_nonzero(vals >= tol))
    neg = int(np.count_nonzero(vals <= -tol))
    zero = one.size - pos - neg

    for k in starts[sizes == PIVOT_2X2].tolist():
        a, b, c = d_diag[k], d_sub[k], d_diag[k + 1]
        if a * c - b * b < 0:
            pos += 1
            neg += 1
            continue
        for lam in np.linalg.eigvalsh(np.array([[a, b], [b, c]])):
            if lam >= tol:
                pos += 1
            elif lam <= -tol:
                neg += 1
            else:
                zero += 1
    return Inertia(pos, zero, neg)


def solve_block_diagonal(
    d_diag: Vector,
    d_sub: Vector,
    starts: IndexArray,
    sizes: IndexArray,
    rhs: Vector,
) -> Vector:
    """Solve ``D w = rhs`` block by block (no singularity check)."""
    w = rhs.copy()
    one = starts[sizes == PIVOT_1X1]
    w[one] = rhs[one] / d_diag[one]
    two = starts[sizes == PIVOT_2X2]
    if two.size:
        a, b, c = d_diag[two], d_sub[two], d_diag[two + 1]
        r0, r1 = rhs[two], rhs[two + 1]
        det = a * c - b * b
        w[two] = (c * r0 - b * r1) / det
        w[two + 1] = (a * r1 - b * r0) / det
    return w
