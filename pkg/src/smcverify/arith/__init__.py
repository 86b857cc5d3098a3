"""Exact arithmetic: rationals are fractions.Fraction throughout."""

from .bivariate import BivarRatFun
from .matrix import RatMatrix, jordan_chevalley, minimal_polynomial, nullspace, rref
from .multipoly import MultiPoly
from .ratfun import RatFun, ratfun_pole_data
from .unipoly import UniPoly, poly_gcd, rational_roots, squarefree_decomposition

__all__ = [
    "BivarRatFun",
    "MultiPoly",
    "RatFun",
    "RatMatrix",
    "UniPoly",
    "jordan_chevalley",
    "minimal_polynomial",
    "nullspace",
    "poly_gcd",
    "ratfun_pole_data",
    "rational_roots",
    "rref",
    "squarefree_decomposition",
]
