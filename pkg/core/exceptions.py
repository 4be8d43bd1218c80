class X1LaguerreError(Exception):
    """Base class for every error raised by the core package."""


class DomainError(X1LaguerreError, ValueError):
    pass


class SpecialFunctionOverflow(X1LaguerreError, OverflowError):
    pass


class ConfigurationError(X1LaguerreError, ValueError):
    pass


class NonConvergenceError(X1LaguerreError):
    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class InsufficientMomentsError(X1LaguerreError, IndexError):
    def __init__(self, needed, available):
        super().__init__(
            f'moment table covers indices 0..{available - 1}, '
            f'but indices up to {needed} are required'
        )
        self.needed = needed
        self.available = available


class SingularMatrixError(X1LaguerreError):
    def __init__(self, message, condition=None):
        if condition is not None:
            message = f'{message} (condition estimate {condition:.3e})'
        super().__init__(message)
        self.condition = condition


class NonzeroRemainderError(X1LaguerreError):
    """Raised when (x + alpha) does not divide the exceptional bracket."""

    def __init__(self, remainder):
        super().__init__(
            f'polynomial violates the exceptional condition: '
            f'division by (x + alpha) leaves remainder {remainder}'
        )
        self.remainder = remainder
