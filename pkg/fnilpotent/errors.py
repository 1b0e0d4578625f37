"""Exceptions raised by fnilpotent. Each carries the exit code the command line maps it to."""


class FNilpotentError(Exception):
    exit_code = 2


class ParseError(FNilpotentError, ValueError):
    """Malformed ring, polynomial or ideal text.

    >>> err = ParseError("unknown identifier 'w'", line=1, column=7, text='x + y*w')
    >>> str(err)
    "unknown identifier 'w' (line 1, column 7)"
    >>> err.exit_code
    1
    """
    exit_code = 1

    def __init__(self, message, line=None, column=None, text=None):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UsageError(FNilpotentError, ValueError):
    exit_code = 1


class PreconditionError(FNilpotentError, ValueError):
    """An operation's precondition does not hold. ``index`` names the offending element, when there is one."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class NonPrimeCharacteristicError(PreconditionError):
    pass


class RingMismatchError(PreconditionError, TypeError):
    pass


class DegreeOverflowError(FNilpotentError, OverflowError):
    """An exponent left the checked 64-bit range.

    >>> err = DegreeOverflowError(2 ** 70)
    >>> err.e is None
    True
    >>> str(err.at_frobenius_exponent(9)).endswith('(Frobenius exponent e=9)')
    True
    """

    def __init__(self, exponent, e=None):
        self.exponent = exponent
        self.e = e
        msg = f"exponent {exponent} exceeds the 64-bit exponent range"
        if e is not None:
            msg += f" (Frobenius exponent e={e})"
        super().__init__(msg)

    def at_frobenius_exponent(self, e):
        return DegreeOverflowError(self.exponent, e=e)


class OracleRefusal(FNilpotentError, RuntimeError):
    pass


class InvariantViolation(FNilpotentError, AssertionError):
    pass


class ModelingWarning(UserWarning):
    """The affine quotient P/A may not faithfully model the local ring at m for this input."""
