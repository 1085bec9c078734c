"""Exception types shared across the package."""


class CantorArithError(Exception):
    """Base class for all package errors."""


class DomainError(CantorArithError, ValueError):
    """An argument lies outside the domain of an operation."""


class OutOfInterval(CantorArithError):
    """The target point is not inside the certified interval."""


class Infeasible(CantorArithError):
    """A term-count split cannot be satisfied with the given parameter list.

    ``which`` names the violated inequality (e.g. ``"alphas:first"``).
    """

    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class NoSolution(CantorArithError):
    """A parameter search found no admissible value within its bound."""


class BudgetViolation(CantorArithError):
    """A solver round failed to restore its error bound within budget.

    This signals an implementation or parameter fault; it never fires on
    inputs inside the certified regime.
    """


class ResourceLimit(CantorArithError):
    """An oracle computation exceeded a configured size cap."""


class EvalNotExact(CantorArithError):
    """A map has no exact rational evaluation at a required point."""
