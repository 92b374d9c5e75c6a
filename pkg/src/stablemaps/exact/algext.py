"""Simple algebraic extensions K[z]/(m) of a base field.

An :class:`AlgebraElem` is a residue of degree < deg(m) modulo an
irreducible monic modulus m over its base field.  Towers (an extension of
an extension) are deliberately refused: every computation in this library
needs at most one symbolic root at a time, and the refusal keeps normal
forms canonical.

Inverses come from the extended Euclidean algorithm, so arithmetic stays
exact over any supported base field (Q, F_p, Q(c)).
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError, UnsupportedError
from .fields import QQ
from .ratfunc import RatFunc
from .unipoly import UniPoly

__all__ = ["AlgebraElem", "ExtensionField"]


class AlgebraElem:
    """Residue class rep mod modulus; immutable."""

    __slots__ = ("rep", "field")

    def __init__(self, rep: UniPoly, field: "ExtensionField"):
        rep = rep % field.modulus
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "field", field)

    def __setattr__(self, *a):
        raise AttributeError("AlgebraElem is immutable")

    def _coerce(self, other):
        if isinstance(other, AlgebraElem):
            if other.field != self.field:
                raise TypeError("elements of distinct extensions")
            return other
        try:
            return self.field.coerce(other)
        except (TypeError, ValueError, ParseError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraElem(self.rep + other.rep, self.field)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElem(-self.rep, self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraElem(self.rep - other.rep, self.field)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraElem(self.rep * other.rep, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraElem":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero in extension field")
        g, s, _ = self.rep.ext_gcd(self.field.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("modulus is not irreducible: zero divisor found")
        return AlgebraElem(s.scale(self.field.base.one / g[0]), self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash((self.rep, self.field.modulus))

    def __bool__(self):
        return not self.rep.is_zero()

    def in_base(self):
        """Return the base-field value if this element is rational over the base."""
        if self.rep.degree > 0:
            raise ValueError("element is not in the base field")
        if self.rep.is_zero():
            return self.field.base.zero
        return self.rep[0]

    def __repr__(self):
        return f"({self.rep})".replace(self.rep.var, self.field.gen_name)


class ExtensionField:
    """Descriptor for base[z]/(modulus), modulus monic irreducible."""

    def __init__(self, modulus: UniPoly, gen_name: str = "a"):
        if modulus.degree < 1:
            raise ValueError("extension modulus must be nonconstant")
        if isinstance(modulus.field, ExtensionField):
            raise UnsupportedError("extension towers are not supported")
        self.base = modulus.field
        self.modulus = modulus.monic()
        self.gen_name = gen_name
        self.char = self.base.char
        self.name = f"{self.base.name}[{gen_name}]/({self.modulus})"
        self.zero = AlgebraElem(UniPoly.zero(self.base, modulus.var), self)
        self.one = AlgebraElem(UniPoly.one(self.base, modulus.var), self)

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def gen(self) -> AlgebraElem:
        return AlgebraElem(UniPoly.x(self.base, self.modulus.var), self)

    def coerce(self, v):
        if isinstance(v, AlgebraElem):
            if v.field != self:
                raise TypeError("element of a different extension")
            return v
        if isinstance(v, UniPoly) and v.field == self.base:
            return AlgebraElem(v, self)
        if isinstance(v, (int, Fraction, str, RatFunc)):
            return AlgebraElem(
                UniPoly.constant(self.base.coerce(v), self.base, self.modulus.var), self)
        try:
            base_val = self.base.coerce(v)
        except TypeError:
            raise TypeError(f"cannot coerce {v!r} into {self.name}") from None
        return AlgebraElem(UniPoly.constant(base_val, self.base, self.modulus.var), self)

    def format(self, x: AlgebraElem):
        return {"rep": [self.base.format(co) for co in x.rep.coeffs],
                "mod": [self.base.format(co) for co in self.modulus.coeffs]}

    def parse(self, s):
        if isinstance(s, dict):
            rep = UniPoly([self.base.parse(v) for v in s["rep"]], self.base, self.modulus.var)
            return AlgebraElem(rep, self)
        return self.coerce(s)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and other.base == self.base and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ExtensionField", self.modulus))
