"""Runtime factory mapping a backend selector to a kernel suite."""

import logging
import os

import psutil

from mdsipm.errors import ConfigError

from .kernels import LinearAlgebra, SequentialLinearAlgebra, ThreadedLinearAlgebra
from .models import BackendSelector, Execution, MemorySpace

logger = logging.getLogger(__name__)

BACKEND_NAMES: dict[str, BackendSelector] = {
    "default": BackendSelector(MemorySpace.DEFAULT, Execution.SEQUENTIAL),
    "host-seq": BackendSelector(MemorySpace.HOST, Execution.SEQUENTIAL),
    "host-par": BackendSelector(MemorySpace.HOST, Execution.PARALLEL),
}


def default_workers() -> int:
    """Physical core count, falling back to logical cores, then 1."""
    return psutil.cpu_count(logical=False) or os.cpu_count() or 1


def backend_from_name(name: str) -> BackendSelector:
    """Translate a CLI backend name into a selector.

    Raises:
        ConfigError: If ``name`` is not a known backend.
    """
    try:
        return BACKEND_NAMES[name]
    except KeyError:
        known = ", ".join(BACKEND_NAMES)
        msg = f"unknown backend {name!r} (expected one of: {known})"
        raise ConfigError(msg) from None


def make_linear_algebra(
    selector: BackendSelector | None = None, *, workers: int | None = None
) -> LinearAlgebra:
    """Build the kernel suite for ``selector``.

    ``DEFAULT`` and ``HOST`` with sequential execution share one
    implementation and therefore agree bit for bit.

    Args:
        selector: Memory space and execution policy; ``None`` means DEFAULT.
        workers: Thread count for parallel suites (physical cores if omitted).

    Returns:
        A kernel suite bound to ``selector``.

    Raises:
        ConfigError: If no backend exists for the selector.
    """
    selector = selector or BackendSelector()
    match selector.memory_space, selector.execution:
        case (MemorySpace.DEFAULT | MemorySpace.HOST, Execution.SEQUENTIAL):
            suite: LinearAlgebra = SequentialLinearAlgebra(selector)
        case (MemorySpace.HOST, Execution.PARALLEL):
            suite = ThreadedLinearAlgebra(selector, workers or default_workers())
        case (space, execution):
            msg = f"no {execution} backend available for memory space {space}"
            raise ConfigError(msg)
    logger.debug("kernel suite %s for %s", type(suite).__name__, selector)
    return suite
