"""Theta-function machinery for the Picard and Hitchin solutions of Painleve VI."""

from .errors import BranchWarning, ConvergenceError, DomainError, PoleError
from .painleve import HITCHIN, PICARD, InitialData, P6Params

__version__ = "0.1.0"

__all__ = [
    "BranchWarning",
    "ConvergenceError",
    "DomainError",
    "PoleError",
    "HITCHIN",
    "PICARD",
    "InitialData",
    "P6Params",
    "__version__",
]
