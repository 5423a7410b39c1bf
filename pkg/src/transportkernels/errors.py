"""Exception types shared across the package."""

from __future__ import annotations


class TransportKernelError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TransportKernelError, ValueError):
    """A value fails its construction-time contract."""


class DimensionMismatchError(TransportKernelError, ValueError):
    """Operands live over different numbers of bins."""


class MassMismatchError(TransportKernelError, ValueError):
    """Histogram pair with unequal total mass; the table set is empty."""


class LengthMismatchError(TransportKernelError, ValueError):
    """Sequences of unequal length were combined position-wise."""


class BudgetExceededError(TransportKernelError, RuntimeError):
    """Table enumeration hit its cap instead of silently truncating."""

    def __init__(self, message: str, count_so_far: int):
        super().__init__(message)
        self.count_so_far = count_so_far


class KernelEvaluationError(TransportKernelError, RuntimeError):
    """A kernel evaluation failed while building a Gram matrix."""


class ConvergenceError(TransportKernelError, RuntimeError):
    """The iterative eigenvalue sweep failed to reach its threshold."""


class ParseError(TransportKernelError, ValueError):
    """An input file is malformed; carries the path and 1-based line."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
