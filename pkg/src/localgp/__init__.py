"""Exact local arithmetic for special orthogonal groups over Q_p.

Quadratic-form invariants, parameters of semisimple classes, explicit
transfer factors, component groups of formal parameters, local root numbers
and the multiplicity prediction for pairs SO(even) x SO(odd).
"""

__version__ = "0.1.0"

from .errors import DomainError, ValidationError
from .padic import SquareClass, hilbert, square_class
from .quadspace import QuadraticSpace, classify
from .xi import XiFamily

__all__ = [
    "DomainError",
    "QuadraticSpace",
    "SquareClass",
    "ValidationError",
    "XiFamily",
    "__version__",
    "classify",
    "hilbert",
    "square_class",
]
