"""Shared error taxonomy.

Every failure the package raises deliberately belongs to one of three
branches, which the command line front end maps onto exit codes:

* :class:`ParameterError` (exit 2): a caller supplied an invalid argument
  or an inconsistent configuration.
* :class:`DataError` (exit 3): input data is malformed, non-finite,
  non-uniform, or unreadable.
* :class:`NumericalError` (exit 4): the data was admissible but the
  computation is numerically meaningless (rank collapse, non-convergence).

ParameterError and DataError subclass ValueError, NumericalError subclasses
RuntimeError, so generic callers can catch the stdlib types.
"""

__all__ = [
    "DelayFrameError",
    "ParameterError",
    "DataError",
    "NumericalError",
    "DegenerateRankError",
    "DegenerateInputError",
]


class DelayFrameError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DelayFrameError, ValueError):
    """An argument or configuration value is invalid."""


class DataError(DelayFrameError, ValueError):
    """Input data is malformed or violates a data precondition."""


class NumericalError(DelayFrameError, RuntimeError):
    """A computation cannot produce a numerically meaningful result."""


class DegenerateRankError(NumericalError):
    """Numerical rank of the data is below what the request requires."""


class DegenerateInputError(NumericalError):
    """Input vectors are degenerate where independence is required.

    Instances may carry a ``partial`` attribute holding whatever values
    were well defined before the degeneracy was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
