"""Exception hierarchy shared by every module."""

import numpy as np


class GraphQfimError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GraphQfimError, ValueError):
    """Malformed input: bad indices, mismatched dimensions, unknown names."""


class ParseError(ValidationError):
    """A text file could not be parsed.

    ``line`` is the 1-based line number of the offending line, when known.
    """

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class DomainError(GraphQfimError, ValueError):
    """Input outside the mathematical domain of an operation
    (non-Hermitian operator, mixed state where a pure one is required, ...)."""


class ResourceError(GraphQfimError, MemoryError):
    """A dense construction would exceed the configured qubit cap."""


class SingularQfimError(GraphQfimError, ArithmeticError):
    """The QFIM is not invertible: the parameters cannot be estimated
    simultaneously.

    Attributes
    ----------
    rank : int
        Numerical rank of the matrix.
    null_space : ndarray, shape (d, d - rank)
        Orthonormal basis of the unidentifiable parameter combinations.
    """

    def __init__(self, rank, null_space, message=None):
        self.rank = int(rank)
        self.null_space = np.asarray(null_space)
        if message is None:
            d = self.null_space.shape[0]
            message = f"QFIM is singular (rank {self.rank} of {d})"
        super().__init__(message)


class DegenerateMeasurementError(GraphQfimError, ArithmeticError):
    """Every POVM outcome has vanishing probability."""


class OptimizationFailedError(GraphQfimError, RuntimeError):
    """The objective was infinite at every sampled point."""
