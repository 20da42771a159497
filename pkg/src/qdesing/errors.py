"""Exception hierarchy shared by all modules."""


class QdesingError(Exception):
    """Base class; every error raised on purpose derives from it."""


class DimensionError(QdesingError, ValueError):
    pass


class ParseError(QdesingError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownSymbolError(ParseError):
    pass


class CapacityError(QdesingError):
    """A configured resource cap (degree, depth, step count) was exceeded."""


class ValidationError(QdesingError, ValueError):
    """Input violates a documented precondition."""


class PointNotOnVariety(ValidationError):
    pass


class UnsupportedError(ValidationError):
    """The request lies outside the desk-scale cases this library handles."""


class NotAdmissibleError(ValidationError):
    pass


class DivisibilityFailure(QdesingError):
    """Pullback not divisible by exc^d although the blow-up was admissible.

    Reaching this is a bug, never a user error.
    """


class NotMaximalOrderError(ValidationError):
    pass


class NoTriangularContactError(UnsupportedError):
    pass


class MarkUnderflowError(ValidationError):
    pass


class InvalidEmbeddingError(ValidationError):
    pass


class RoundTripFailure(QdesingError):
    pass


class PropertyViolation(QdesingError):
    """A machine-checked claim failed on a concrete instance."""
