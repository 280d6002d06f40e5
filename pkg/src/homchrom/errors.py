"""Exception types shared across the package."""


class HomchromError(Exception):
    """Base class for all package errors."""


class ParameterError(HomchromError, ValueError):
    """A generator or operation received parameters outside its valid range."""


class BudgetError(HomchromError):
    """A size budget was exceeded.

    ``count`` carries the size reached (or computed) when the budget tripped.
    """

    def __init__(self, message, count=None, stage=None):
        super().__init__(message)
        self.count = count
        self.stage = stage


class ShapeError(HomchromError, ValueError):
    """Input of the wrong shape (dimension mismatch, wrong source graph, ...)."""


class FreenessError(HomchromError):
    """A group action required to be free fixes a cell."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class GraphFormatError(HomchromError, ValueError):
    """Unparseable graph text; ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class DefectError(HomchromError, AssertionError):
    """An internal consistency check failed (this indicates a bug)."""
