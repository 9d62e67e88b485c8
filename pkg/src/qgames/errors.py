"""Exception types shared across the package."""


class QGamesError(Exception):
    """Base class for all package errors."""


class ValidationError(QGamesError, ValueError):
    """Invalid user-supplied data (bad weights, malformed files, ...)."""


class UnknownLabelError(ValidationError):
    """A strategy label is not part of the game it is used with."""


class SizeLimitError(ValidationError):
    """An enumeration would exceed the supported problem size."""


class MismatchedSpaceError(ValidationError):
    """Random variables do not live on the same sample space."""


class MembershipError(ValidationError):
    """A strategy is not a member of the environment it is checked against."""


class NonBinaryVariableError(ValidationError):
    """A random variable takes more than two values where two are required."""


class DimensionMismatchError(ValidationError):
    """Operator and state dimensions are incompatible."""


class ZeroStateError(ValidationError):
    """A state vector with all-zero amplitudes cannot be measured."""


class FamilyKindError(ValidationError):
    """An operation requires the one-parameter rotation strategy family."""


class BijectionMismatchError(QGamesError):
    """Internal consistency failure: two constructions disagree on labels."""


class CalibrationError(QGamesError):
    """An algebraic identification was found but fails numeric validation."""
