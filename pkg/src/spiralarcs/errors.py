"""Exception hierarchy for spiralarcs.

The CLI maps InvalidDataError (and subclasses) to exit code 2 and
SolverError to exit code 3, so keep validation failures and numerical
failures on separate branches.
"""


class SpiralArcsError(Exception):
    """Base class for all package-specific errors."""


class InvalidDataError(SpiralArcsError, ValueError):
    """Input data violates a precondition (bad geometry, bad schema, ...)."""


class DegenerateLensError(InvalidDataError):
    """|alpha| == |beta|: the lens collapses and the construction degenerates."""


class ConvexityError(InvalidDataError):
    """Operation requires convex-spiral data and the input has none."""


class LengthRangeError(InvalidDataError):
    """Requested length lies outside the attainable range.

    Carries the violated bound so callers can report it.
    """

    def __init__(self, message, requested=None, lower=None, upper=None):
        super().__init__(message)
        self.requested = requested
        self.lower = lower
        self.upper = upper


class UnsupportedRegimeError(InvalidDataError):
    """Data falls in a regime the requested operation does not model."""


class SolverError(SpiralArcsError, ArithmeticError):
    """A numerical search failed (no bracket, no convergence, no root)."""
