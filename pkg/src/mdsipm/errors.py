"""Exception hierarchy for mdsipm."""


class MdsIpmError(Exception):
    """Base class for all errors raised by mdsipm."""


class DimensionError(MdsIpmError, ValueError):
    """Operand shapes do not conform."""


class EmptyInputError(MdsIpmError, ValueError):
    """A reduction that needs at least one element got none."""


class MalformedMatrixError(MdsIpmError, ValueError):
    """A triplet matrix holds indices outside its declared shape."""


class ConfigError(MdsIpmError, ValueError):
    """Invalid option, backend selector or problem specification."""


class NotInteriorError(MdsIpmError):
    """A point is not strictly inside its finite bounds."""


class NumericError(MdsIpmError):
    """NaN or Inf found where finite values are required."""


class SingularError(MdsIpmError):
    """A factorization has a (numerically) zero pivot and cannot solve."""


class EvalError(MdsIpmError):
    """A model evaluation produced non-finite values.

    Attributes:
        component: Name of the offending quantity (e.g. ``"grad_d"``).
    """

    def __init__(self, component: str, message: str | None = None) -> None:
        """Store the failing component alongside the message."""
        self.component = component
        super().__init__(message or f"non-finite values in {component}")


class InitError(MdsIpmError):
    """No strictly interior starting point exists."""


class AssemblyError(MdsIpmError):
    """The 4x4 KKT blocks cannot be assembled as required."""


class CompressionError(MdsIpmError):
    """The sparse block cannot be eliminated (nonpositive diagonal)."""


class SingularSystemError(MdsIpmError):
    """Inertia correction exceeded the largest allowed regularization."""


class RestorationNeededError(MdsIpmError):
    """Line search reached its floor; a restoration phase would be required."""


class MalformedRecordError(MdsIpmError, ValueError):
    """A results file does not follow the record layout it claims."""
