"""Benchmark sweeps, oracle verification suites and host metadata."""

from .host import HostInfo, format_host_line, get_host_info
from .sweep import (
    ERROR_STATUS,
    BenchRecord,
    bench_sweep,
    compare_factorizations,
    timing_overhead,
)
from .verify import (
    SuiteResult,
    VerifyCaps,
    VerifyReport,
    random_kkt_system,
    verify_suite,
)

__all__ = [
    "ERROR_STATUS",
    "BenchRecord",
    "HostInfo",
    "SuiteResult",
    "VerifyCaps",
    "VerifyReport",
    "bench_sweep",
    "compare_factorizations",
    "format_host_line",
    "get_host_info",
    "random_kkt_system",
    "timing_overhead",
    "verify_suite",
]
