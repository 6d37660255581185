"""Exception types shared across the package."""


class QDerivError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(QDerivError, ValueError):
    """Field characteristic is not a prime number."""


class NotIrreducible(QDerivError, ValueError):
    """Supplied modulus polynomial factors over GF(p)."""


class NotPrimitive(QDerivError, ValueError):
    """Modulus is irreducible but x does not generate the nonzero elements."""


class FieldTooLarge(QDerivError, ValueError):
    """Requested field order exceeds the configured table bound."""


class MixedFields(QDerivError, ValueError):
    """Operands belong to different field contexts."""


class DivisionByZero(QDerivError, ZeroDivisionError):
    """Multiplicative inverse (or logarithmic derivative) of zero."""


class ZeroToZeroPower(QDerivError, ArithmeticError):
    """0**0 is rejected rather than given a value."""


class InvalidDeformation(QDerivError, ValueError):
    """Shift exponent s fixes theta, so the difference quotient degenerates."""


class NotFrobenius(QDerivError, ValueError):
    """Operation needs a linear derivative, i.e. s must be a power of p."""


class FieldTooLargeForExhaustive(QDerivError, ValueError):
    """Pairwise scan would exceed the exhaustive-check budget."""


class NotInSubspace(QDerivError, ValueError):
    """Element lies outside the span of the antiderivative chain."""


class NoExpFunction(QDerivError, ValueError):
    """The derivative has no nonzero fixed point for this deformation."""


class OutOfRange(QDerivError, ValueError):
    """Integer argument outside the supported domain."""


class ParseError(QDerivError, ValueError):
    """Malformed field or deformation spec string."""
