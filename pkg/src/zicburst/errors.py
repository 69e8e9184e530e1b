"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidInterval(ValueError):
    """A search interval or box is empty (lower end above upper end)."""


class InfeasibleError(ValueError):
    """A scheme or optimization problem has an empty feasible set."""


class PreconditionError(ValueError):
    """The operation's modelling assumptions do not hold for this input."""
