"""Plain-text matrix dumps: a ``rows cols nnz`` header, then ``i j value`` lines."""

from pathlib import Path

import numpy as np

from mdsipm.errors import MalformedMatrixError

from .constants import DUMP_DIGITS
from .models import DenseMatrix, TripletMatrix


def format_matrix_dump(matrix: DenseMatrix | TripletMatrix) -> str:
    """Render ``matrix`` in the dump format.

    Dense matrices are written as a full row-major enumeration, zeros included.
    """
    match matrix:
        case DenseMatrix():
            ii, jj = np.divmod(np.arange(matrix.data.size), matrix.cols or 1)
            triplets = TripletMatrix(matrix.rows, matrix.cols, ii, jj, matrix.data)
        case TripletMatrix():
            triplets = matrix
    lines = [f"{triplets.rows} {triplets.cols} {triplets.nnz}"]
    lines.extend(
        f"{i} {j} {v:.{DUMP_DIGITS}g}"
        for i, j, v in zip(
            triplets.i.tolist(), triplets.j.tolist(), triplets.v.tolist(), strict=True
        )
    )
    return "\n".join(lines) + "\n"


def write_matrix_dump(path: Path, matrix: DenseMatrix | TripletMatrix) -> Path:
    """Write ``matrix`` to ``path`` (parent directories are created)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_matrix_dump(matrix), encoding="utf-8")
    return path


def parse_triplet_dump(text: str) -> TripletMatrix:
    """Parse dump text back into a triplet matrix.

    Raises:
        MalformedMatrixError: If the header or an entry line is malformed, the
            entry count disagrees with the header, or an index is out of range.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        msg = "empty matrix dump"
        raise MalformedMatrixError(msg)
    try:
        rows, cols, nnz = (int(tok) for tok in lines[0].split())
        entries = [
            (int(i), int(j), float(v))
            for i, j, v in (line.split() for line in lines[1:])
        ]
    except ValueError as exc:
        msg = f"malformed matrix dump: {exc}"
        raise MalformedMatrixError(msg) from exc
    if len(entries) != nnz:
        msg = f"dump header announces {nnz} entries, found {len(entries)}"
        raise MalformedMatrixError(msg)
    matrix = TripletMatrix.from_entries(rows, cols, entries)
    matrix.check_indices()
    return matrix


def read_triplet_dump(path: Path) -> TripletMatrix:
    """Read a dump file written by ``write_matrix_dump``."""
    return parse_triplet_dump(path.read_text(encoding="utf-8"))
