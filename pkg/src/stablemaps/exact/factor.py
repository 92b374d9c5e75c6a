"""Irreducible factorization of univariate polynomials.

Squarefree decomposition and all ring arithmetic are in-house; the
irreducible splitting of a content-cleared polynomial is delegated to
sympy's exact factorizer and the results are converted back to
:class:`UniPoly`.  Supported coefficient fields: Q, F_p, Q(c) (through
bivariate factorization over Q), and a single algebraic extension of Q.

Every public function returns monic factors and is verified by the test
suite against reconstruction oracles (the product of the returned powers
must reproduce the input up to a scalar).
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import UnsupportedError
from .algext import AlgebraElem, ExtensionField
from .fields import GF, QQ, FpElement
from .ratfunc import FunctionField, RatFunc
from .unipoly import UniPoly

__all__ = ["factor_squarefree_irreducible", "is_irreducible", "rational_roots"]

_Z = sympy.Symbol("_z")
_C = sympy.Symbol("_c")


def _to_sympy_q(p: UniPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                       for c in reversed(p.coeffs)], _Z, domain="QQ")


def _from_sympy_q(sp, field, var) -> UniPoly:
    coeffs = [Fraction(c.p, c.q) for c in reversed(sp.all_coeffs())]
    return UniPoly(coeffs, field, var)


def _factor_q(p: UniPoly) -> list[tuple[UniPoly, int]]:
    _, factors = _to_sympy_q(p).factor_list()
    out = []
    for f, mult in factors:
        g = _from_sympy_q(sympy.Poly(f, _Z), QQ, p.var).monic()
        out.append((g, mult))
    return out


def _factor_fp(p: UniPoly) -> list[tuple[UniPoly, int]]:
    q = p.field.p
    sp = sympy.Poly([c.value for c in reversed(p.coeffs)], _Z, modulus=q, symmetric=False)
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [FpElement(int(c) % q, q) for c in reversed(sympy.Poly(f, _Z).all_coeffs())]
        out.append((UniPoly(coeffs, p.field, p.var).monic(), mult))
    return out


def _factor_funcfield(p: UniPoly) -> list[tuple[UniPoly, int]]:
    # Clear c-denominators, factor the bivariate polynomial over Q, and keep
    # the factors of positive z-degree (c-only factors are units of Q(c)[z]).
    field: FunctionField = p.field
    den = UniPoly.one(QQ, field.var)
    for co in p.coeffs:
        den = den * co.den.exact_div(den.gcd(co.den))
    expr = sympy.Integer(0)
    for k, co in enumerate(p.coeffs):
        cleared = co.num * den.exact_div(co.den)
        for j, cj in enumerate(cleared.coeffs):
            if cj:
                expr += sympy.Rational(cj.numerator, cj.denominator) * _Z**k * _C**j
    _, factors = sympy.Poly(expr, _Z, _C, domain="QQ").factor_list()
    out = []
    for f, mult in factors:
        fp = sympy.Poly(f, _Z)
        if fp.degree() == 0:
            continue
        coeffs = []
        for zc in reversed(fp.all_coeffs()):
            cpoly = sympy.Poly(zc, _C, domain="QQ")
            frac_coeffs = [Fraction(v.p, v.q) for v in reversed(cpoly.all_coeffs())]
            coeffs.append(RatFunc(UniPoly(frac_coeffs, QQ, field.var)))
        g = UniPoly(list(reversed(coeffs)), field, p.var).monic()
        out.append((g, mult))
    return out


def _factor_extension(p: UniPoly) -> list[tuple[UniPoly, int]]:
    field: ExtensionField = p.field
    if field.base != QQ:
        raise UnsupportedError("factorization over this extension is not supported")
    mod = _to_sympy_q(field.modulus)
    theta = sympy.AlgebraicNumber(sympy.CRootOf(mod.as_expr(), 0))
    dom = sympy.QQ.algebraic_field(theta)
    te = theta.as_expr()

    def to_anp(elem):
        expr = sympy.Integer(0)
        for j, cj in enumerate(elem.rep.coeffs):
            if cj:
                expr += sympy.Rational(cj.numerator, cj.denominator) * te**j
        return dom.from_sympy(expr)

    def from_anp(a):
        if hasattr(a, "to_list"):
            desc = a.to_list()
            frac = [Fraction(int(v.numerator), int(v.denominator))
                    for v in reversed(desc)]
        else:
            frac = [Fraction(int(a.numerator), int(a.denominator))]
        return AlgebraElem(UniPoly(frac, QQ, field.modulus.var), field)

    sp = sympy.Poly([to_anp(co) for co in reversed(p.coeffs)], _Z, domain=dom)
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        if f.degree() == 0:
            continue
        coeffs = [from_anp(a) for a in reversed(f.rep.to_list())]
        g = UniPoly(coeffs, field, p.var).monic()
        out.append((g, mult))
    return out


def factor_squarefree_irreducible(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors of p with multiplicities.

    The product of factor^multiplicity equals p up to a nonzero scalar;
    constants factor as the empty list.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    field = p.field
    if field == QQ:
        return _factor_q(p)
    if isinstance(field, FunctionField):
        return _factor_funcfield(p)
    if isinstance(field, ExtensionField):
        return _factor_extension(p)
    if hasattr(field, "p"):
        return _factor_fp(p)
    raise UnsupportedError(f"factorization over {field} is not supported")


def is_irreducible(p: UniPoly) -> bool:
    if p.degree < 1:
        return False
    factors = factor_squarefree_irreducible(p)
    return len(factors) == 1 and factors[0][1] == 1


def rational_roots(p: UniPoly) -> list:
    """Roots of p lying in its own coefficient field, via the factor list."""
    roots = []
    for f, _ in factor_squarefree_irreducible(p):
        if f.degree == 1:
            roots.append(-f[0] / f[1])
    return roots
