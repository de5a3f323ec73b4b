"""Exceptions raised by skewpbw."""


class SkewPBWError(Exception):
    """Base class for every error raised by this package."""


class ZeroDivisorError(SkewPBWError, ZeroDivisionError):
    """Inverse of the zero scalar was requested."""

    def __init__(self, message: str = "zero divisor in field"):
        super().__init__(message)


class SingularSubstitutionError(SkewPBWError):
    """A parameter substitution sent a denominator to zero."""

    def __init__(self, message: str = "singular substitution"):
        super().__init__(message)


class MapNotInvertibleError(SkewPBWError):
    def __init__(self, message: str = "map not invertible"):
        super().__init__(message)


class PresentationError(SkewPBWError):
    """Malformed, rejected or unknown presentation, or an unmet ring precondition."""


class DimensionError(SkewPBWError):
    """Matrix shapes, module sides or complex lengths do not fit together."""


class NotIdempotentError(SkewPBWError):
    def __init__(self, message: str = "matrix is not idempotent"):
        super().__init__(message)


class BoundTooSmallError(SkewPBWError):
    def __init__(self, message: str = "bound too small"):
        super().__init__(message)


class VerificationError(SkewPBWError):
    """An internally produced certificate failed its exact re-check."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class DSLParseError(SkewPBWError):
    """Syntax or shape error in a .spbw document, with its source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
