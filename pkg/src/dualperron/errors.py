"""Exception hierarchy shared by every module in the package."""

import numpy as np


class DualPerronError(Exception):
    """Base class for all errors raised by dualperron."""


class DualOverflowError(DualPerronError, ArithmeticError):
    """An arithmetic result left the finite reals."""


class DivisionUndefinedError(DualPerronError, ZeroDivisionError):
    """Dual division with a non-appreciable divisor and appreciable dividend."""


class ZeroVectorError(DualPerronError, ValueError):
    pass


class NonAppreciableError(DualPerronError, ValueError):
    """A vector (or vector component) has zero standard part where one is required."""


class DimensionMismatchError(DualPerronError, ValueError):
    pass


class SingularMatrixError(DualPerronError, np.linalg.LinAlgError):
    pass


class NegativeEntryError(DualPerronError, ValueError):
    pass


class NotIrreducibleError(DualPerronError, ValueError):
    pass


class NotPrimitiveError(DualPerronError, ValueError):
    pass


class ConvergenceError(DualPerronError, RuntimeError):
    """An iterative kernel exhausted its iteration budget."""


class BracketInversionError(DualPerronError, RuntimeError):
    """Collatz lower bracket exceeded the upper bracket (numerical fault)."""


class InsufficientDataError(DualPerronError, ValueError):
    pass


class PreconditionError(DualPerronError, ValueError):
    pass


class DocumentError(DualPerronError, ValueError):
    """Malformed matrix document; ``line`` points into the source text when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
