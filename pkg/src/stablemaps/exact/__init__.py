"""Exact arithmetic substrate: fields, polynomials, forms, matrices,
places, Laurent matrices, and exact linear feasibility."""

from .algext import AlgebraElem, ExtensionField
from .cone import nonneg_cone_feasible, strict_cone_feasible
from .factor import factor_squarefree_irreducible, is_irreducible, rational_roots
from .fields import GF, QQ, FpElement, PrimeField, RationalField, \
    format_rational, parse_rational
from .homog import INFINITE_ORDER, HomogForm, monomials, vanishing_order
from .laurent import LaurentMatrix, LaurentPoly, birkhoff_factorization
from .matrix import SquareMatrix, kernel_basis
from .parsing import parse_poly_string
from .places import Place
from .ratfunc import FF_C, FunctionField, RatFunc
from .unipoly import UniPoly

__all__ = [
    "AlgebraElem", "ExtensionField",
    "strict_cone_feasible", "nonneg_cone_feasible",
    "factor_squarefree_irreducible", "is_irreducible", "rational_roots",
    "GF", "QQ", "FpElement", "PrimeField", "RationalField",
    "format_rational", "parse_rational",
    "INFINITE_ORDER", "HomogForm", "monomials", "vanishing_order",
    "LaurentMatrix", "LaurentPoly", "birkhoff_factorization",
    "SquareMatrix", "kernel_basis",
    "parse_poly_string",
    "Place",
    "FF_C", "FunctionField", "RatFunc",
    "UniPoly",
]
