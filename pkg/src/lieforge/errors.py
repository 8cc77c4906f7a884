"""Exception hierarchy shared across the package."""


class LieForgeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(LieForgeError):
    """Malformed input: dimension mismatch, unknown group name, bad config."""


class SingularityError(LieForgeError):
    """A matrix or metric is singular / too ill-conditioned to proceed.

    Carries the condition estimate (if available) and optionally the point
    at which the degeneracy occurred.
    """

    def __init__(self, message, condition=None, point=None):
        super().__init__(message)
        self.condition = condition
        self.point = point


class NumericRangeError(LieForgeError):
    """Input norm exceeds the numeric budget of a kernel (e.g. expm scaling)."""


class DomainError(LieForgeError):
    """A point (or a finite-difference stencil around it) leaves the chart's
    safe domain."""
