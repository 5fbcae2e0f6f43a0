"""
Error hierarchy shared by every toolkit module.

DomainError and InputValidationError map to exit code 1 in the CLI and
HTTP 400 in the API; AccuracyError and SolverError map to exit code 2
and HTTP 500.
"""

from typing import Optional, Tuple


class RobinToolkitError(Exception):
    """Base class for all toolkit errors"""


class DomainError(RobinToolkitError, ValueError):
    """Argument outside the mathematical domain (x <= 1, nu <= -1, R < R_min, ...)"""


class InputValidationError(RobinToolkitError, ValueError):
    """Structured input rejected (non-isoperimetric spec, bad radius list, violated precondition)"""


class AccuracyError(RobinToolkitError, ArithmeticError):
    """Quadrature could not reach the requested tolerance"""

    def __init__(self, message: str, estimate: float = float("nan"),
                 tolerance: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.tolerance = tolerance


class SolverError(RobinToolkitError, RuntimeError):
    """Root bracketing or eigenvalue bisection ran out of budget"""

    def __init__(self, message: str, bracket: Optional[Tuple[float, float]] = None):
        super().__init__(message)
        self.bracket = bracket
