"""Exception and warning types shared by every module."""


class DomainError(ValueError):
    """Argument outside the domain where a function is defined."""


class ConvergenceError(ArithmeticError):
    """A series or iteration did not reach its tolerance."""


class PoleError(ZeroDivisionError):
    """Evaluation at (or numerically at) a pole.

    ``series`` names the pole family when known: ``"picard"`` for zeros of
    theta_1 at the solution argument, ``"second"`` for zeros of the
    theta_1' + 2 pi i A theta_1 numerator, ``None`` otherwise.
    """

    def __init__(self, message, series=None, level=None):
        super().__init__(message)
        self.series = series
        self.level = level


class BranchWarning(UserWarning):
    """Argument lies off the principal domain; values follow a branch choice."""
