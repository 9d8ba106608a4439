"""Exception hierarchy shared by every module of the package."""


class WahullError(Exception):
    """Base class for all errors raised by wahull."""


class DimensionMismatch(WahullError, ValueError):
    pass


class SingularMatrix(WahullError, ValueError):
    pass


class UnknownLetter(WahullError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class AlphabetMismatch(WahullError, ValueError):
    pass


class NotAnInvariant(WahullError, ValueError):
    pass


class BudgetExceeded(WahullError, RuntimeError):
    """The invariant computation hit its step cap."""


class NoMergeablePair(WahullError, RuntimeError):
    """No pair of components could be merged; signals a broken precondition."""


class ParseError(WahullError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
