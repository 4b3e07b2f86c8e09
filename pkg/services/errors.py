from typing import Optional


class SpacelikeError(Exception):
    """Base exception for toolkit failures; ``exit_code`` is what the CLI returns"""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[str] = None):
        self.message = message
        self.details = details
        super().__init__(self.message)


class DomainError(SpacelikeError, ValueError):
    """An operation was called outside the region where it is defined"""

    exit_code = 3


class SweepError(SpacelikeError):
    """A sweep or grid request cannot be honoured (reported as a usage error)"""

    exit_code = 2


class ConvergenceError(SpacelikeError):
    """Quadrature could not meet its tolerance; carries the best estimate and its relative bound"""

    exit_code = 4

    def __init__(
        self,
        message: str,
        best_estimate: complex,
        error_bound: float,
        evaluations: int,
        details: Optional[str] = None,
    ):
        self.best_estimate = best_estimate
        self.error_bound = error_bound
        self.evaluations = evaluations
        super().__init__(message, details=details)


class EmitError(SpacelikeError):
    """Emitted text could not be parsed back into rows"""
