"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class QsvdError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInput(QsvdError, ValueError):
    """An input violates a documented invariant (non-finite entries, bad tolerance, ...)."""

    exit_code = 5


class ShapeError(QsvdError, ValueError):
    exit_code = 3


class NotPositiveSemidefinite(InvalidInput):
    exit_code = 5


class NotNormalized(InvalidInput):
    exit_code = 5


class ConvergenceFailure(QsvdError, ArithmeticError):
    exit_code = 4


class ParseError(QsvdError, ValueError):
    """Malformed contraction expression."""

    exit_code = 2


class FormatError(QsvdError, ValueError):
    """A tensor file could not be parsed; the message carries the location."""

    exit_code = 3


class IoError(QsvdError, OSError):
    exit_code = 3
