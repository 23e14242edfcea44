"""Exception types shared across the package.

The CLI maps these onto exit codes: DataError and subclasses exit 2,
BudgetError exits 3, anything argparse rejects exits 1.
"""


class TimedagError(Exception):
    """Base class for all package-specific errors."""


class DataError(TimedagError):
    """Malformed or inconsistent input data (bad TSV line, bad timestamp, ...)."""


class UnknownNodeError(DataError):
    """A node id was referenced that is not part of the graph."""


class EmptyIntervalError(TimedagError):
    """The (source, target) pair bounds an empty interval and cannot be split."""


class EstimationError(TimedagError):
    """A dimension estimate is undefined for the given counts."""


class BudgetError(TimedagError):
    """A configured resource budget (e.g. closure edge budget) was exceeded."""
