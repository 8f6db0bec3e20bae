"""Exact p-adic local zeta functions on non-degenerate complete
intersections, computed from Newton polyhedra, with brute-force oracles."""

from .errors import BudgetExceededError, HypothesisError, IgusaError, PolynomialSyntaxError
from .polycore import IntPolynomial, PolySystem, PrimeContext, parse_polynomial
from .ratfun import FactoredRationalFunction
from .zeta import candidate_poles, poincare_series, zeta_full, zeta_origin

__all__ = [
    "BudgetExceededError",
    "FactoredRationalFunction",
    "HypothesisError",
    "IgusaError",
    "IntPolynomial",
    "PolySystem",
    "PolynomialSyntaxError",
    "PrimeContext",
    "candidate_poles",
    "parse_polynomial",
    "poincare_series",
    "zeta_full",
    "zeta_origin",
]

__version__ = "0.1.0"
