"""Exception hierarchy shared by all modules."""


class MatMeasureError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MatMeasureError, ValueError):
    """Input rejected before any computation (CLI exit code 2)."""


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, location=None):
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
        self.location = location


class UnknownSuite(ValidationError):
    pass


class NoConvergence(MatMeasureError):
    pass


class UnsupportedFunction(MatMeasureError):
    """Set-level query on a symbol that is not affine and real on the support."""


class NonPolynomialOnSegment(MatMeasureError):
    pass


class DegreeOverflow(MatMeasureError):
    pass


class RangeViolation(MatMeasureError):
    pass


class TrivialSpace(MatMeasureError):
    pass


class InSpectrum(MatMeasureError):
    pass


class NotCyclic(MatMeasureError):
    pass
