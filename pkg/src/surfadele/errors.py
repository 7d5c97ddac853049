"""Exception types raised across the package."""


class AlgebraError(Exception):
    """Base class for every error raised by surfadele."""


class PolynomialParseError(AlgebraError, ValueError):
    pass


class FieldMismatchError(AlgebraError, ValueError):
    pass


class DegenerateIdealError(AlgebraError, ValueError):
    """All generators are zero."""


class OutOfRangeError(AlgebraError, ValueError):
    pass


class UnsupportedEnumerationError(AlgebraError):
    pass


class ShapeUnsupportedError(AlgebraError):
    """The ideal is neither principal nor of the form (f(u), g(u, v))."""


class NotRegularAtPointError(AlgebraError, ZeroDivisionError):
    pass


class ValuationOfZeroError(AlgebraError, ValueError):
    pass


class InsufficientCertificateError(AlgebraError):
    """The certificate prefix cannot bound the tail of the series."""


class InsufficientPrecisionError(AlgebraError):
    pass


class OutOfPrecisionError(AlgebraError, IndexError):
    pass


class BudgetExceededError(AlgebraError):
    pass


class PrefixTooShortError(AlgebraError):
    pass


class BadLiftError(AlgebraError, ValueError):
    pass


class InvalidSeriesError(AlgebraError, ValueError):
    pass


class CertificateSchemaError(AlgebraError, ValueError):
    pass


class CertificateFailedError(AlgebraError):
    """A certificate did not pass verification where a verified one is required."""
