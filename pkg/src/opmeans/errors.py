"""Exception types shared across the package.

Every failure mode callers are expected to distinguish gets its own class;
all of them derive from :class:`OpmeansError` so blanket handling stays easy.
"""


class OpmeansError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(OpmeansError):
    """Malformed input: wrong shape, broken invariant, bad parameter."""


class DomainError(OpmeansError):
    """A scalar function was evaluated outside its domain."""


class OrderError(OpmeansError):
    """A required Loewner or scalar ordering between inputs does not hold."""


class OutOfRangeError(OpmeansError):
    """A target value lies outside the range a construction can realize."""


class UnsupportedMeanError(OpmeansError):
    """The requested operation is undefined for this mean."""


class ConditioningError(OpmeansError):
    """Numerical conditioning exceeded the contract of a solver."""


class ConvergenceError(OpmeansError):
    """An iterative routine failed to reach its tolerance."""


class UsageError(OpmeansError):
    """Bad command-line arguments or malformed input files."""
