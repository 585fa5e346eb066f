"""Exception types shared across the package."""


class JlabError(Exception):
    """Base class for errors raised by jlab."""


class ValidationError(JlabError, ValueError):
    """Invalid input parameters or malformed data."""


class BudgetExceeded(JlabError):
    """A search was refused or aborted because it exceeds its budget.

    Never silently replaced by a heuristic answer.
    """

    def __init__(self, message, *, nodes=None, limit=None):
        super().__init__(message)
        self.nodes = nodes
        self.limit = limit
        self.incumbent: list[int] = []  # best clique seen before the abort, if any


class InvariantViolation(JlabError, AssertionError):
    """An internal consistency check failed."""
