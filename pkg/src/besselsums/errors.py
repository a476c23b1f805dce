"""Exception hierarchy for parameter-domain and method-region failures."""

from __future__ import annotations


class BesselSumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BesselSumError, ValueError):
    """A parameter lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """The requested point is a pole of the function."""


class RegionError(BesselSumError, ValueError):
    """Parameters are valid but outside the region where the chosen method
    converges.  ``alternatives`` names methods that do apply, if any."""

    def __init__(self, message: str, alternatives: tuple[str, ...] = ()):
        if alternatives:
            message = f"{message} (valid alternatives: {', '.join(alternatives)})"
        super().__init__(message)
        self.alternatives = alternatives


class DivergenceError(RegionError):
    """A coefficient series diverges for the given parameters (b >= 2*pi)."""


class ConditioningError(BesselSumError, ValueError):
    """The parameters sit too close to a singular configuration for the
    method to be evaluated stably.  ``alternatives`` names fallback paths."""

    def __init__(self, message: str, alternatives: tuple[str, ...] = ()):
        if alternatives:
            message = f"{message} (valid alternatives: {', '.join(alternatives)})"
        super().__init__(message)
        self.alternatives = alternatives


class RoutingError(BesselSumError, ValueError):
    """The request should be served by a different evaluation path; the
    message names it."""


class CapacityError(BesselSumError, ValueError):
    """A fixed table or truncation cap was exceeded."""
