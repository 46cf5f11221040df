"""Exception types shared across the package."""


class ProglabError(Exception):
    """Base class for all package errors."""


class InvalidElementError(ProglabError, ValueError):
    """An element does not belong to the group it is used with."""


class InvalidArgumentError(ProglabError, ValueError):
    pass


class NoSolutionError(ProglabError, ValueError):
    """A target value lies outside the range attained on the requested branch."""


class SolverFailure(ProglabError, RuntimeError):
    pass


class TooLargeError(ProglabError, ValueError):
    """Explicit enumeration was requested beyond the feasibility guard."""


class BudgetExceeded(ProglabError, RuntimeError):
    """A search ran out of budget; ``partial`` holds whatever was learned."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
