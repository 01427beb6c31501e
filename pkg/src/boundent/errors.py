"""Exception hierarchy shared by every boundent module."""


class BoundentError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(BoundentError, ValueError):
    """An input broke a documented precondition (shape, Hermiticity, normalization...)."""


class SizeLimitError(BoundentError):
    """A construction would exceed the configured dimension limit."""

    def __init__(self, dim: int, limit: int, what: str = "operator"):
        self.dim = dim
        self.limit = limit
        super().__init__(f"{what} dimension {dim} exceeds limit {limit}")


class ConvergenceError(BoundentError):
    """An iterative solver ran out of sweeps/iterations."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class InvalidEstimateError(BoundentError):
    """An overlap estimate makes the cost bound vacuous (alpha >= 1)."""


class ConsistencyError(BoundentError):
    """An internally constructed object failed its own certificate check."""
