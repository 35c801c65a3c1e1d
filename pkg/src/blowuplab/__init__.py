"""Exact computations with blowup algebras of linear-form arrangements."""
from .exactnum import QMatrix, Rational, rational
from .poly import MonomialOrder, Polynomial, PolyRing, parse_polynomial
from .groebner import (Budget, BudgetExceeded, GroebnerBasis, IdealHandle, buchberger, colon,
                       eliminate, ideal_equal, intersect, membership, normal_form, saturate)

__version__ = "0.1.0"
