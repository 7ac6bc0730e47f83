"""Typed errors raised by the obstruction pipeline."""


class SeifertGateError(Exception):
    """Base class for every error raised by this package."""


class TooFewFibers(SeifertGateError):
    """Fewer than three multiplicities were supplied."""


class MultiplicityTooSmall(SeifertGateError):
    """Some multiplicity is smaller than 2."""


class NotCoprime(SeifertGateError):
    """Two multiplicities share a common factor."""


class DivisionByZero(SeifertGateError, ZeroDivisionError):
    """A surgery coefficient has denominator zero."""


class InvalidRange(SeifertGateError, ValueError):
    """A rational lies outside the domain of the requested expansion."""


class SingularMatrix(SeifertGateError):
    """The matrix has determinant zero where an inverse was required."""


class EnumerationCapExceeded(SeifertGateError):
    """A lattice search visited more nodes than the configured cap."""


class NotDiagonalizable(SeifertGateError):
    """The form admits no orthonormal basis, so the requested quantity is undefined."""


class InvalidParameter(SeifertGateError, ValueError):
    """A family parameter is outside its allowed range."""
