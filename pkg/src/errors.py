"""Exception hierarchy shared by every module of the toolkit."""

from typing import Any


class GeofiltError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgumentError(GeofiltError, ValueError):
    """Raised when an input violates a documented precondition."""


class UnsupportedFamilyError(InvalidArgumentError):
    """Raised when an operation is not defined for a spectral family."""


class AssemblyError(GeofiltError):
    """Raised when finite element assembly receives corrupt input."""


class PreconditionError(GeofiltError):
    """Raised when a Chebyshev interval does not cover the spectrum."""


class StateError(GeofiltError):
    """Raised when a component is used before it has been prepared."""


class ModelError(GeofiltError):
    """Raised when the summed covariance operator is not positive definite."""


class SizeLimitError(GeofiltError):
    """Raised when a dense oracle is called above its size guard."""


class NumericalFailureError(GeofiltError):
    """Raised when a numerical procedure fails to converge."""

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceError(GeofiltError):
    """Raised when conjugate gradient stops at its iteration cap.

    The last estimate is kept so callers can still write their output.
    """

    def __init__(
        self,
        message: str,
        residual_history: list[float],
        iterations: int,
        estimates: Any = None,
    ) -> None:
        super().__init__(message)
        self.residual_history = residual_history
        self.iterations = iterations
        self.estimates = estimates


class GridFormatError(GeofiltError):
    """Raised when a GRIDF64 file cannot be parsed."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class GridTruncationError(GridFormatError):
    """Raised when a GRIDF64 payload does not match its header."""
