"""Exception types shared across the package."""


class AsnpError(Exception):
    """Base class for all library errors."""


class FeasibilityError(AsnpError):
    """An enumeration would exceed the configured element cap.

    ``cost`` carries the number of elements that would have been visited.
    """

    def __init__(self, message, cost=None):
        super().__init__(message)
        self.cost = cost


class ConsistencyError(AsnpError):
    """An internal exactness assertion failed (signals an arithmetic bug)."""


class HypothesisError(AsnpError, ValueError):
    """Parameters violate the hypotheses an operation requires."""
