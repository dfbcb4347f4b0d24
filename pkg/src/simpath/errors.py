"""Exception types shared across the package."""


class SimpathError(Exception):
    """Base class for all package-specific errors."""


class InstanceFormatError(SimpathError):
    """A document or constructor argument violates the instance format."""


class BudgetExceededError(SimpathError):
    """A configured resource cap (states, subsets, arcs, search nodes) was hit."""


class NegativeCycleError(SimpathError):
    """A negative-cost directed cycle was found where none is allowed.

    Attributes:
        cycle: arc ids of a witness cycle, in traversal order.
    """

    def __init__(self, message: str, cycle: list[int]):
        super().__init__(message)
        self.cycle = cycle


class NotDagError(SimpathError):
    """Raised by solvers that require a directed acyclic input."""


class NotLaminarError(SimpathError):
    """Raised by the laminar solver when the color family is not laminar."""
