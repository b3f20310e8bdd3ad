"""Exception hierarchy shared by all modules."""


class BNError(Exception):
    """Base class for all errors raised by bnineq."""


class DomainError(BNError, ValueError):
    """An argument lies outside the domain of the operation."""


class MalformedInputError(BNError, ValueError):
    """Input data has the wrong shape or structure."""


class UndersamplingError(BNError, ValueError):
    """A grid is too coarse to represent the polynomial exactly."""


class PreconditionError(BNError, ValueError):
    """A documented precondition of the operation does not hold."""


class InfeasibleError(BNError):
    """An optimization problem has no feasible point."""


class SolverError(BNError, RuntimeError):
    """A numerical solver failed to converge or reported a bad status."""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class AccuracyError(BNError, ArithmeticError):
    """A quadrature or root finder could not reach the requested tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StructuralViolationError(BNError, AssertionError):
    """A computed object violates a structural property it must have."""
