"""Exception types shared across the package."""


class UrnLabError(Exception):
    """Base class for all urnlab errors."""


class ValidationError(UrnLabError, ValueError):
    """A config or input value failed validation; message names the field."""


class ParseError(UrnLabError, ValueError):
    """A config file could not be parsed.

    Carries ``line`` and ``column`` when the underlying JSON error
    provides them.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class UnequalRowSums(UrnLabError, ValueError):
    """Row sums of a generating matrix differ (violates the constant-addition model)."""


class NegativeOffDiagonal(UrnLabError, ValueError):
    """A generating matrix or addition row has a negative off-diagonal entry."""


class NegativeDiagonal(UrnLabError, ValueError):
    """Negative diagonal entries require an explicit withdrawal declaration."""


class Reducible(UrnLabError, ValueError):
    """The generating matrix is reducible; no strictly positive stationary allocation."""


class DegenerateSpectrum(UrnLabError, ValueError):
    """Eigenvalue 1 of the generating matrix is not simple within tolerance."""


class EmptyUrn(UrnLabError, RuntimeError):
    """A draw was attempted from an urn with no balls (total mass <= 0)."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class NegativeBallCount(UrnLabError, RuntimeError):
    """A withdrawal drove some ball count below zero."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class InvalidHistory(UrnLabError, ValueError):
    """A rule received a history summary it cannot use."""


class NoKnownLimit(UrnLabError, ValueError):
    """The rule has no declared or derivable limit generating matrix."""


class UnknownDrift(UrnLabError, ValueError):
    """The rule has no declared or derivable drift rate."""


class DimensionMismatch(UrnLabError, ValueError):
    """Matrix/vector dimensions are inconsistent."""


class NotDiagonalizable(UrnLabError, ValueError):
    """The limit matrix is numerically too close to defective for the covariance engine."""


class UnsupportedRegime(UrnLabError, ValueError):
    """No closed-form covariance is available for this scaling regime."""


class InsufficientCheckpoints(UrnLabError, ValueError):
    """The recorded checkpoints do not span enough decades for a rate check."""
