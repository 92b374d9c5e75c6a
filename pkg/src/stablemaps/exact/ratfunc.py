"""The rational function field Q(c) and its field descriptor.

Elements are reduced fractions of rational-coefficient polynomials in one
variable; the denominator is kept monic and coprime to the numerator, so
equality is literal equality of coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ, format_rational, parse_rational
from .unipoly import UniPoly

__all__ = ["RatFunc", "FunctionField", "FF_C"]


class RatFunc:
    """A reduced num/den pair of UniPoly over Q.  Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.one(QQ, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field != QQ or den.field != QQ:
            raise TypeError("RatFunc coefficients live over Q")
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree >= 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            den = UniPoly.one(QQ, num.var)
        lead = den.leading()
        if lead != QQ.one:
            num = num.scale(QQ.one / lead)
            den = den.scale(QQ.one / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def from_scalar(cls, v, var="c"):
        return cls(UniPoly.constant(parse_rational(v), QQ, var))

    @classmethod
    def variable(cls, var="c"):
        return cls(UniPoly.x(QQ, var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, str)):
            return RatFunc.from_scalar(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return (RatFunc(self.den, self.num)) ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute(self, inner: UniPoly) -> "RatFunc":
        """Substitute the variable by a polynomial (ramified cover c -> s^e etc.)."""
        num = self.num.compose(inner)
        den = self.den.compose(inner)
        return RatFunc(num, den)

    def substitute_reciprocal(self, new_var: str) -> "RatFunc":
        """r(v) -> r(1/w) as a rational function of the new variable w."""
        dn, dd = self.num.degree, self.den.degree
        if self.is_zero():
            return RatFunc(UniPoly.zero(QQ, new_var))
        d = max(dn, dd)
        num = UniPoly([self.num[d - k] for k in range(d + 1)], QQ, new_var)
        den = UniPoly([self.den[d - k] for k in range(d + 1)], QQ, new_var)
        return RatFunc(num, den)

    def eval(self, x) -> Fraction:
        d = self.den.eval(x)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.eval(x) / d

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"


class FunctionField:
    """Descriptor for Q(var)."""

    char = 0

    def __init__(self, var: str = "c"):
        self.var = var
        self.name = f"Q({var})"
        self.zero = RatFunc(UniPoly.zero(QQ, var))
        self.one = RatFunc(UniPoly.one(QQ, var))

    def coerce(self, v):
        if isinstance(v, RatFunc):
            if v.var != self.var:
                if v.num.is_constant() and v.den.is_constant():
                    return RatFunc.from_scalar(v.num[0] / v.den[0], self.var)
                raise TypeError(f"rational function in {v.var} used in {self.name}")
            return v
        if isinstance(v, UniPoly):
            return RatFunc(v)
        if isinstance(v, (int, Fraction)):
            return RatFunc.from_scalar(v, self.var)
        if isinstance(v, str):
            return self.parse(v)
        raise TypeError(f"cannot coerce {v!r} into {self.name}")

    def format(self, x: RatFunc):
        return {
            "num": [format_rational(co) for co in x.num.coeffs],
            "den": [format_rational(co) for co in x.den.coeffs],
        }

    def parse(self, s):
        if isinstance(s, dict):
            num = UniPoly([parse_rational(v) for v in s["num"]], QQ, self.var)
            den = UniPoly([parse_rational(v) for v in s.get("den", ["1"])], QQ, self.var)
            return RatFunc(num, den)
        from .parsing import parse_poly_string
        if isinstance(s, str) and "/" in s and any(ch.isalpha() for ch in s):
            top, _, bottom = s.partition("/")
            return RatFunc(parse_poly_string(top, self.var), parse_poly_string(bottom, self.var))
        return self.coerce(parse_poly_string(str(s), self.var))

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.var == self.var

    def __hash__(self):
        return hash(("FunctionField", self.var))


FF_C = FunctionField("c")
