"""Semantic exception hierarchy for the xinu package."""


class XinuError(Exception):
    """Base error for this package."""


class DomainError(XinuError, ValueError):
    """A parameter or argument lies outside its valid domain."""


class DimensionError(XinuError, ValueError):
    """Grid orders or array shapes are incompatible."""


class PrecisionError(XinuError, ValueError):
    """An input cannot be represented at the required grid resolution."""


class ValidationError(XinuError):
    """A structural invariant (mass nonnegativity, marginal sums, ...) is violated."""


class ConvergenceError(XinuError):
    """An iterative solver exhausted its iteration budget.

    Carries the residuals observed at the point of failure in ``residuals``.
    """

    def __init__(self, message: str, residuals: dict | None = None):
        super().__init__(message)
        self.residuals = residuals or {}
