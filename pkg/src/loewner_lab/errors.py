"""Exception types shared across the library."""


class LoewnerLabError(Exception):
    """Base class for all library-specific errors."""


class DimensionMismatchError(LoewnerLabError):
    """Operands have incompatible dimensions."""


class EigenSolverError(LoewnerLabError):
    """Eigendecomposition failed or missed its accuracy contract."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class DomainError(LoewnerLabError):
    """A scalar function was evaluated outside its domain."""


class NotPositiveDefiniteError(LoewnerLabError):
    """A positive definite operand was required."""


class ConditionCapError(LoewnerLabError):
    """Condition number exceeds the configured cap."""


class HypothesisError(LoewnerLabError):
    """Certificate hypotheses are violated; the check is refused.

    Inequality *failures* are never reported this way: a failed inequality
    is data (``holds=False`` on the certificate), not an exception.
    """


class NotUnitalError(HypothesisError):
    """A unital positive linear map was required."""
