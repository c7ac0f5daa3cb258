"""Host summary attached to benchmark output."""

import platform
from dataclasses import asdict, dataclass

import numpy as np
import psutil

from .constants import BYTES_PER_GB


@dataclass(frozen=True, slots=True)
class HostInfo:
    """Machine a benchmark ran on."""

    cpu: str
    physical_cores: int
    logical_cores: int
    total_gb: float
    free_gb: float
    python: str
    numpy: str

    def as_dict(self) -> dict[str, str | int | float]:
        """Plain dictionary for JSON output."""
        return asdict(self)


def get_host_info() -> HostInfo:
    """Get CPU, core counts and memory of this machine.

    Returns:
        HostInfo: Processor string, physical/logical cores, total and
        available memory in GB, and interpreter and numpy versions.
    """
    mem = psutil.virtual_memory()
    logical = psutil.cpu_count(logical=True) or 1
    return HostInfo(
        cpu=platform.processor() or platform.machine() or "unknown",
        physical_cores=psutil.cpu_count(logical=False) or logical,
        logical_cores=logical,
        total_gb=mem.total / BYTES_PER_GB,
        free_gb=mem.available / BYTES_PER_GB,
        python=platform.python_version(),
        numpy=np.__version__,
    )


def format_host_line(info: HostInfo) -> str:
    """One-line human summary."""
    return (
        f"{info.cpu}, {info.physical_cores} cores ({info.logical_cores} threads), "
        f"{info.free_gb:.1f}/{info.total_gb:.1f} GB free, "
        f"Python {info.python}, numpy {info.numpy}"
    )
