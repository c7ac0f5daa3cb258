"""Mixed dense-sparse linear algebra: containers, kernels, backends, dumps."""

from .constants import INF_BOUND
from .dump import (
    format_matrix_dump,
    parse_triplet_dump,
    read_triplet_dump,
    write_matrix_dump,
)
from .factory import (
    BACKEND_NAMES,
    backend_from_name,
    default_workers,
    make_linear_algebra,
)
from .kernels import LinearAlgebra, SequentialLinearAlgebra, ThreadedLinearAlgebra
from .models import (
    BackendSelector,
    DenseMatrix,
    DiagonalMatrix,
    Execution,
    MemorySpace,
    ReduceKind,
    TripletMatrix,
    Vector,
    as_vector,
)

__all__ = [
    "BACKEND_NAMES",
    "INF_BOUND",
    "BackendSelector",
    "DenseMatrix",
    "DiagonalMatrix",
    "Execution",
    "LinearAlgebra",
    "MemorySpace",
    "ReduceKind",
    "SequentialLinearAlgebra",
    "ThreadedLinearAlgebra",
    "TripletMatrix",
    "Vector",
    "as_vector",
    "backend_from_name",
    "default_workers",
    "format_matrix_dump",
    "make_linear_algebra",
    "parse_triplet_dump",
    "read_triplet_dump",
    "write_matrix_dump",
]
