"""Univariate polynomials over an exact field.

A polynomial is an immutable coefficient tuple in degree-ascending order
with no trailing zeros; the empty tuple is the zero polynomial.  Every
polynomial carries its field descriptor and a one-letter variable tag
(``c`` for curve parameters, ``z`` for affine chart coordinates, ``t``/``s``
for ramified covers), which is respected by serialization and display.

Division, gcd, and the extended Euclidean algorithm work over any of the
supported fields; squarefree decomposition is the char-0 derivative method
(prime-field inputs are factored through the dedicated factorization
routines instead).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .fields import QQ

__all__ = ["UniPoly"]


class UniPoly:
    """Dense exact univariate polynomial; immutable."""

    __slots__ = ("coeffs", "field", "var")

    def __init__(self, coeffs: Iterable, field=QQ, var: str = "z"):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field=QQ, var="z"):
        return cls((), field, var)

    @classmethod
    def one(cls, field=QQ, var="z"):
        return cls((field.one,), field, var)

    @classmethod
    def x(cls, field=QQ, var="z"):
        return cls((field.zero, field.one), field, var)

    @classmethod
    def constant(cls, value, field=QQ, var="z"):
        return cls((field.coerce(value),), field, var)

    @classmethod
    def monomial(cls, k: int, value=1, field=QQ, var="z"):
        return cls((field.zero,) * k + (field.coerce(value),), field, var)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and self.field == other.field
        if self.is_constant():
            try:
                return self[0] == self.field.coerce(other)
            except TypeError:
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def _wrap(self, coeffs):
        return UniPoly(coeffs, self.field, self.var)

    def _coerce_other(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise TypeError(f"mixed coefficient fields {self.field} and {other.field}")
            return other
        return UniPoly((self.field.coerce(other),), self.field, self.var)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce_other(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = self._coerce_other(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([self[k] - other[k] for k in range(n)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            other = self._coerce_other(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self._wrap(())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.field, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, s) -> "UniPoly":
        s = self.field.coerce(s)
        return self._wrap([c * s for c in self.coeffs])

    def __divmod__(self, other):
        other = self._coerce_other(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = self.field.one / other.leading()
        dlen = len(other.coeffs)
        while len(rem) >= dlen:
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) < dlen:
                break
            k = len(rem) - dlen
            factor = rem[-1] * inv_lead
            q[k] = factor
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * b
            rem.pop()
        return self._wrap(q), self._wrap(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division was not exact")
        return q

    # -- algebra -----------------------------------------------------------

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return self._wrap([c / lead for c in self.coeffs])

    def gcd(self, other) -> "UniPoly":
        """Monic gcd via the Euclidean algorithm."""
        a, b = self, self._coerce_other(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def ext_gcd(self, other):
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        a, b = self, self._coerce_other(other)
        one = UniPoly.one(self.field, self.var)
        zero = UniPoly.zero(self.field, self.var)
        s0, s1, t0, t1 = one, zero, zero, one
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero():
            return a, s0, t0
        lead = a.leading()
        return a.monic(), s0.scale(self.field.one / lead), t0.scale(self.field.one / lead)

    def derivative(self) -> "UniPoly":
        if len(self.coeffs) <= 1:
            return self._wrap(())
        return self._wrap([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def squarefree_part(self) -> "UniPoly":
        """Monic product of the distinct irreducible factors (char 0)."""
        if self.field.char != 0:
            raise ValueError("squarefree part by derivative needs characteristic 0")
        if self.degree < 1:
            return UniPoly.one(self.field, self.var)
        return self.exact_div(self.gcd(self.derivative()) * (self.field.one / self.leading())).monic()

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun decomposition [(g_i, i)] with prod g_i^i = self/lc (char 0)."""
        if self.field.char != 0:
            raise ValueError("Yun decomposition needs characteristic 0")
        f = self.monic()
        if f.degree < 1:
            return []
        out = []
        g = f.gcd(f.derivative())
        w = f.exact_div(g)
        i = 1
        while w.degree >= 1:
            y = w.gcd(g)
            fac = w.exact_div(y)
            if fac.degree >= 1:
                out.append((fac.monic(), i))
            w, g = y, g.exact_div(y)
            i += 1
        return out

    def multiplicity_of(self, factor: "UniPoly") -> int:
        """Largest m with factor^m dividing self (self nonzero, factor nonconstant)."""
        if self.is_zero():
            raise ValueError("multiplicity in the zero polynomial is infinite")
        if factor.degree < 1:
            raise ValueError("multiplicity of a constant factor")
        m = 0
        cur = self
        while True:
            q, r = divmod(cur, factor)
            if not r.is_zero():
                return m
            m += 1
            cur = q

    # -- evaluation / substitution ------------------------------------------

    def eval(self, x):
        """Horner evaluation at a field element."""
        x = self.field.coerce(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_in(self, x, field):
        """Evaluate at an element of a larger field containing the coefficients."""
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + field.coerce(c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero(self.field, inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coeffs(self, fn, field=None, var=None) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], field or self.field, var or self.var)

    def reversed_coeffs(self, degree: int | None = None) -> "UniPoly":
        """Coefficient reversal x^d * p(1/x) padded to the given degree."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below actual degree")
        return self._wrap([self[d - k] for k in range(d + 1)])

    # -- Q-specific helpers --------------------------------------------------

    def content_and_primitive(self):
        """Over Q: (content, primitive) with primitive integer coefficients, positive lead."""
        if self.field != QQ:
            raise ValueError("content is defined over Q only")
        if self.is_zero():
            return Fraction(0), self
        from math import gcd, lcm
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in self.coeffs]
        g = 0
        for v in nums:
            g = gcd(g, v)
        sign = -1 if nums[-1] < 0 else 1
        g *= sign
        prim = self._wrap([Fraction(v // g) for v in nums])
        return Fraction(g, den), prim

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if not c:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*{self.var}" if c != self.field.one else self.var)
            else:
                head = f"{c}*" if c != self.field.one else ""
                parts.append(f"{head}{self.var}^{k}")
        return " + ".join(parts).replace("+ -", "- ")
