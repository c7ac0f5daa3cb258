"""Mixed dense-sparse NLP problems: interface, evaluation, built-ins, checks."""

from .builtins import (
    PROBLEM_KINDS,
    DoubleWellProblem,
    nonconvex_problem,
    parse_problem_spec,
    random_problem,
    synthetic_problem,
)
from .checks import DerivativeReport, check_derivatives
from .evaluate import EvalBundle, eval_all
from .problem import MdsNlpProblem, ProblemBounds, ProblemDims
from .quadratic import QuadraticMdsProblem
from .validate import validate_problem

__all__ = [
    "PROBLEM_KINDS",
    "DerivativeReport",
    "DoubleWellProblem",
    "EvalBundle",
    "MdsNlpProblem",
    "ProblemBounds",
    "ProblemDims",
    "QuadraticMdsProblem",
    "check_derivatives",
    "eval_all",
    "nonconvex_problem",
    "parse_problem_spec",
    "random_problem",
    "synthetic_problem",
    "validate_problem",
]
