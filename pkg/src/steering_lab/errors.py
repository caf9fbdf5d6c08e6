"""Exception types shared across the package."""


class SteeringLabError(Exception):
    """Base class for all errors raised by steering_lab."""


class DomainError(SteeringLabError, ValueError):
    """A parameter is outside its physical or documented domain."""


class UnphysicalState(SteeringLabError, ValueError):
    """Covariance matrix violates the uncertainty principle (nu_minus < 1)."""


class NonPositiveMatrix(SteeringLabError, ValueError):
    """Matrix expected to be positive semidefinite is not."""


class NumericalFailure(SteeringLabError, ArithmeticError):
    """A numeric intermediate left its valid range by more than tolerance."""


class StructureViolation(SteeringLabError, ValueError):
    """4x4 matrix deviates from the (alpha I, gamma Z; gamma Z, beta I) form."""


class NoBracket(SteeringLabError, ValueError):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterations(SteeringLabError, RuntimeError):
    """Iterative solver exhausted its iteration budget."""
