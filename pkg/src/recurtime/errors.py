"""Exception hierarchy; the CLI maps these onto exit codes."""


class RecurError(Exception):
    """Base class for all package errors."""


class DomainError(RecurError, ValueError):
    """Parameters outside the domain of an operation (CLI exit code 1)."""


class NumericalError(RecurError, ArithmeticError):
    """A computation broke down numerically (CLI exit code 2)."""


class NonPositiveDeterminant(NumericalError):
    """A Toeplitz determinant came out clearly negative: the entries are wrong."""


class DimensionTooLarge(DomainError):
    """Matrix size above the configured cap."""


class SingularSystem(NumericalError):
    """The ABIA saddle-point matrix is numerically singular."""


class NoRoot(DomainError):
    """A scalar equation has no root in the admissible interval."""


class TooFewSamples(DomainError):
    """Not enough uncensored records for a fit."""
