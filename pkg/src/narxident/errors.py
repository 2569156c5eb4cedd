"""Exception types shared across the package."""


class NarxError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(NarxError):
    """Invalid meta-parameter or argument bounds."""


class InsufficientDataError(NarxError):
    """Data record too short for the requested lags."""


class MissingInputError(NarxError):
    """A regressor needs a signal that was not supplied."""


class SingularMatrixError(NarxError):
    """Regression matrix numerically rank deficient.

    ``column`` identifies the offending column index when known.
    """

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class ConstraintError(NarxError):
    """Equality constraints inconsistent, dependent, or inapplicable."""


class DegenerateRangeError(NarxError):
    """A signal has zero range where a nonzero range is required."""
