"""Filter line-search interior-point solver for mixed dense-sparse problems."""

from importlib.metadata import version

__version__ = version("mdsipm")

# Re-export main entry point and core types
from mdsipm.__main__ import main
from mdsipm.ipm import SolveResult, SolverOptions, SolveStatus, solve
from mdsipm.model import MdsNlpProblem, parse_problem_spec

__all__ = [
    "MdsNlpProblem",
    "SolveResult",
    "SolveStatus",
    "SolverOptions",
    "__version__",
    "main",
    "parse_problem_spec",
    "solve",
]
