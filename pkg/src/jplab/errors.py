"""Exception types shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(OverflowError):
    """Result not representable in double precision."""


class CapabilityError(ValueError):
    """Input is valid mathematically but outside what the implementation supports."""


class AccuracyError(RuntimeError):
    """Adaptive refinement failed to reach the requested tolerance.

    ``best`` carries the last estimate and ``err_estimate`` the last observed
    difference between successive refinements.
    """

    def __init__(self, message: str, best: float, err_estimate: float):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate
