"""Exception types shared across the package."""


class NaharmError(Exception):
    """Base class for all package errors."""


class DimensionError(NaharmError, ValueError):
    """Vector length does not match the algebra's dimensions."""


class ConvergenceError(NaharmError):
    """A series or iteration failed to reach the requested tolerance."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TruncationError(NaharmError):
    """Truncated-domain quadrature left an estimated tail above tolerance."""


class UnderResolvedOscillationError(NaharmError):
    """Oscillatory quadrature was requested with too few panels per period."""


class GridRefusalError(NaharmError):
    """A spectral grid node fell inside the guard band around a zero."""


class ConfigError(NaharmError, ValueError):
    """Invalid or unknown configuration content."""
