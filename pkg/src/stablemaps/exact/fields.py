"""Base coefficient fields: the rationals and prime fields.

Field *descriptors* are tiny objects that know how to produce, coerce,
parse, and format elements of one exact field.  Elements themselves are
plain values (``fractions.Fraction`` for Q, :class:`FpElement` for F_p)
carrying the usual arithmetic operators, so generic code over "some field"
never needs to branch on the field kind; it only asks the descriptor for
``zero``, ``one``, or ``coerce``.

Rationals serialize as ``"p/q"`` strings (``"3"``, ``"-1/2"``); prime-field
elements as their canonical representative in ``[0, p)``.

Descriptors for the rational function field Q(c) and for simple algebraic
extensions live next to their element classes in :mod:`ratfunc` and
:mod:`algext`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError

__all__ = ["QQ", "GF", "FpElement", "RationalField", "PrimeField",
           "parse_rational", "format_rational"]


def parse_rational(s) -> Fraction:
    """Parse a "p/q" string (or int) into a canonical Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {s!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical "p/q" string; integers print without the denominator."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalField:
    """Descriptor for Q with Fraction elements."""

    char = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return parse_rational(v)
        raise TypeError(f"cannot coerce {v!r} into Q")

    def format(self, x) -> str:
        return format_rational(x)

    def parse(self, s):
        return parse_rational(s)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


@dataclass(frozen=True, slots=True)
class FpElement:
    """An element of the prime field F_p, stored as its representative in [0, p)."""

    value: int
    p: int

    def _check(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other % self.p, self.p)
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator not invertible mod {self.p}")
            num = other.numerator % self.p
            den = pow(other.denominator % self.p, -1, self.p)
            return FpElement(num * den % self.p, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value + other.value) % self.p, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpElement(-self.value % self.p, self.p)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value - other.value) % self.p, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.value * other.value % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self * FpElement(pow(other.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._check(other)
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return (FpElement(1, self.p) / self) ** (-k)
        return FpElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """Descriptor for F_p."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("prime field needs p >= 2")
        self.p = p
        self.char = p
        self.name = f"F_{p}"
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def coerce(self, v):
        if isinstance(v, FpElement):
            if v.p != self.p:
                raise TypeError(f"element of F_{v.p} used in F_{self.p}")
            return v
        if isinstance(v, int):
            return FpElement(v % self.p, self.p)
        if isinstance(v, Fraction):
            return self.zero._check(v)
        if isinstance(v, str):
            return self.zero._check(parse_rational(v))
        raise TypeError(f"cannot coerce {v!r} into F_{self.p}")

    def format(self, x) -> str:
        return str(x.value)

    def parse(self, s):
        return self.coerce(parse_rational(s))

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) descriptor for F_p."""
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]
