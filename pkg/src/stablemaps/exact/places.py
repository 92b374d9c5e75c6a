"""Places (discrete valuations) of Q and of Q(c).

Three kinds are supported:

* ``p-adic``   — the p-adic valuation on Q, residue field F_p;
* ``finite``   — a monic irreducible polynomial pi(c), residue field Q for
  degree-1 places and a simple extension Q(alpha) otherwise;
* ``infinite`` — the degree valuation at infinity, v(f/g) = deg g - deg f,
  uniformizer 1/c, residue field Q.

Valuations return exact integers (math.inf on 0).  ``residue`` and ``lift``
implement reduction modulo the maximal ideal and a canonical section of it.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import ParseError, UnsupportedError
from .algext import AlgebraElem, ExtensionField
from .factor import is_irreducible
from .fields import GF, QQ, FpElement
from .parsing import parse_poly_string
from .ratfunc import FunctionField, RatFunc
from .unipoly import UniPoly

__all__ = ["Place"]


def _padic_val_int(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        v += 1
        n //= p
    return v


class Place:
    """One place of Q (p-adic) or of Q(c) (finite polynomial, or infinite)."""

    __slots__ = ("kind", "p", "pi", "var", "_residue_field")

    def __init__(self, kind: str, p: int | None = None, pi: UniPoly | None = None,
                 var: str = "c"):
        if kind not in ("p-adic", "finite", "infinite"):
            raise ValueError(f"unknown place kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "var", pi.var if pi is not None else var)
        object.__setattr__(self, "_residue_field", None)
        if kind == "p-adic":
            if p is None or p < 2:
                raise ValueError("p-adic place needs a prime p >= 2")
        if kind == "finite":
            if pi is None or pi.degree < 1:
                raise ValueError("finite place needs a nonconstant polynomial")
            if pi.leading() != QQ.one:
                raise ValueError("finite place polynomial must be monic")
            if not is_irreducible(pi):
                raise ValueError(f"place polynomial {pi} is not irreducible")

    def __setattr__(self, *a):
        raise AttributeError("Place is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def p_adic(cls, p: int) -> "Place":
        return cls("p-adic", p=p)

    @classmethod
    def finite(cls, pi: UniPoly) -> "Place":
        return cls("finite", pi=pi.monic())

    @classmethod
    def at_value(cls, c0, var="c") -> "Place":
        """The place c = c0."""
        return cls.finite(UniPoly([-Fraction(c0), Fraction(1)], QQ, var))

    @classmethod
    def infinite(cls, var="c") -> "Place":
        return cls("infinite", var=var)

    @classmethod
    def parse(cls, spec: str, var="c") -> "Place":
        """Parse "inf" | "p:7" | "poly:c-2"."""
        spec = spec.strip()
        if spec in ("inf", "infty", "infinite"):
            return cls.infinite(var)
        if spec.startswith("p:"):
            try:
                return cls.p_adic(int(spec[2:]))
            except ValueError as exc:
                raise ParseError(f"bad p-adic place {spec!r}") from exc
        if spec.startswith("poly:"):
            return cls.finite(parse_poly_string(spec[5:], var).monic())
        raise ParseError(f"unrecognized place {spec!r}")

    def spec_string(self) -> str:
        if self.kind == "infinite":
            return "inf"
        if self.kind == "p-adic":
            return f"p:{self.p}"
        return f"poly:{self.pi}".replace(" ", "")

    # -- the valuation -----------------------------------------------------

    def valuation(self, x):
        """Exact valuation of a field element; math.inf on zero."""
        if self.kind == "p-adic":
            x = QQ.coerce(x)
            if not x:
                return math.inf
            return _padic_val_int(x.numerator, self.p) - _padic_val_int(x.denominator, self.p)
        if not isinstance(x, RatFunc):
            x = RatFunc.from_scalar(QQ.coerce(x), self.var)
        if x.is_zero():
            return math.inf
        if self.kind == "infinite":
            return x.den.degree - x.num.degree
        return x.num.multiplicity_of(self.pi) - x.den.multiplicity_of(self.pi)

    def uniformizer(self):
        if self.kind == "p-adic":
            return Fraction(self.p)
        if self.kind == "infinite":
            return RatFunc(UniPoly.one(QQ, self.var), UniPoly.x(QQ, self.var))
        return RatFunc(self.pi)

    def scale_by_uniformizer_power(self, x, k: int):
        if self.kind == "p-adic":
            return QQ.coerce(x) * Fraction(self.p) ** k
        pi = self.uniformizer()
        return x * pi ** k

    # -- residues ----------------------------------------------------------

    def residue_field(self):
        if self._residue_field is None:
            if self.kind == "p-adic":
                rf = GF(self.p)
            elif self.kind == "infinite" or self.pi.degree == 1:
                rf = QQ
            else:
                rf = ExtensionField(self.pi, gen_name="a")
            object.__setattr__(self, "_residue_field", rf)
        return self._residue_field

    def residue(self, x):
        """Image of a valuation->=0 element in the residue field."""
        v = self.valuation(x)
        if v == math.inf:
            return self.residue_field().zero
        if v < 0:
            raise ValueError(f"element has negative valuation {v} at {self.spec_string()}")
        if v > 0:
            return self.residue_field().zero
        if self.kind == "p-adic":
            x = QQ.coerce(x)
            return FpElement((x.numerator % self.p)
                             * pow(x.denominator % self.p, -1, self.p) % self.p, self.p)
        x = x if isinstance(x, RatFunc) else RatFunc.from_scalar(QQ.coerce(x), self.var)
        if self.kind == "infinite":
            return x.num.leading() / x.den.leading()
        if self.pi.degree == 1:
            c0 = -self.pi[0]
            return x.num.eval(c0) / x.den.eval(c0)
        ext: ExtensionField = self.residue_field()
        alpha = ext.gen()
        num = x.num.eval_in(alpha, ext)
        den = x.den.eval_in(alpha, ext)
        return num / den

    def lift(self, xbar):
        """Canonical lift of a residue element back to the fraction field."""
        if self.kind == "p-adic":
            if isinstance(xbar, FpElement):
                return Fraction(xbar.value)
            return Fraction(int(xbar) % self.p)
        if isinstance(xbar, AlgebraElem):
            # lift a residue of a higher-degree place: evaluate the class at c
            poly = xbar.rep.map_coeffs(lambda t: t, QQ, self.var)
            return RatFunc(poly)
        return RatFunc.from_scalar(QQ.coerce(xbar), self.var)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return (self.kind, self.p, self.pi, self.var) == (other.kind, other.p, other.pi, other.var)

    def __hash__(self):
        return hash((self.kind, self.p, self.pi, self.var))

    def __repr__(self):
        return f"Place({self.spec_string()})"
