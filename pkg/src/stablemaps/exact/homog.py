"""Homogeneous multivariate forms over an exact field.

A form of degree d in nvars variables is a sparse map from exponent
tuples (summing to d) to nonzero field elements.  Monomials are ordered
graded-lexicographically with x_0 > x_1 > ... (exponent tuples descending),
and that order is part of the serialization contract.

Binary forms (nvars = 2) get extra support: dehomogenization to z = x/y,
vanishing orders at projective points, and factor multiplicities, which is
what the one-dimensional stability theory consumes.
"""

from __future__ import annotations

import math
from itertools import product

from ..errors import UnsupportedError
from .algext import AlgebraElem, ExtensionField
from .fields import QQ
from .matrix import SquareMatrix
from .unipoly import UniPoly

__all__ = ["HomogForm", "INFINITE_ORDER", "monomials"]

INFINITE_ORDER = math.inf


def monomials(nvars: int, d: int):
    """Exponent tuples of total degree d, graded-lex descending (x_0 largest)."""
    def gen(rem, slots):
        if slots == 1:
            yield (rem,)
            return
        for e in range(rem, -1, -1):
            for rest in gen(rem - e, slots - 1):
                yield (e,) + rest
    return list(gen(d, nvars))


class HomogForm:
    """Immutable homogeneous form."""

    __slots__ = ("nvars", "degree", "coeffs", "field")

    def __init__(self, nvars: int, degree: int, coeffs, field=QQ):
        clean = {}
        for exp, v in dict(coeffs).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp) or sum(exp) != degree:
                raise ValueError(f"exponent {exp} does not have total degree {degree}")
            v = field.coerce(v)
            if v:
                clean[exp] = v
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "field", field)

    def __setattr__(self, *a):
        raise AttributeError("HomogForm is immutable")

    @classmethod
    def zero(cls, nvars, degree, field=QQ):
        return cls(nvars, degree, {}, field)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def items_sorted(self):
        """(exponent, coefficient) pairs in the canonical monomial order."""
        return [(e, self.coeffs[e]) for e in sorted(self.coeffs, reverse=True)]

    def coeff(self, exp):
        return self.coeffs.get(tuple(exp), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, HomogForm):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.coeffs == other.coeffs and self.field == other.field)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HomogForm):
            return NotImplemented
        if (other.nvars, other.degree) != (self.nvars, self.degree):
            raise ValueError("adding forms of different type")
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, self.field.zero) + v
        return HomogForm(self.nvars, self.degree, out, self.field)

    def __neg__(self):
        return HomogForm(self.nvars, self.degree,
                         {e: -v for e, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogForm):
            if other.nvars != self.nvars:
                raise ValueError("multiplying forms in different variable counts")
            out = {}
            for e1, v1 in self.coeffs.items():
                for e2, v2 in other.coeffs.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, self.field.zero) + v1 * v2
            return HomogForm(self.nvars, self.degree + other.degree, out, self.field)
        s = self.field.coerce(other)
        return HomogForm(self.nvars, self.degree,
                         {e: v * s for e, v in self.coeffs.items()}, self.field)

    __rmul__ = __mul__

    def scale(self, s):
        return self * s

    def eval(self, point):
        pt = [self.field.coerce(v) for v in point]
        total = self.field.zero
        for e, v in self.coeffs.items():
            term = v
            for x, k in zip(pt, e):
                for _ in range(k):
                    term = term * x
            total = total + term
        return total

    def partial(self, i: int) -> "HomogForm":
        out = {}
        for e, v in self.coeffs.items():
            if e[i] > 0:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = v * e[i]
        return HomogForm(self.nvars, max(self.degree - 1, 0), out, self.field)

    # -- substitution ----------------------------------------------------------

    def compose_linear(self, m: SquareMatrix) -> "HomogForm":
        """The form x -> self(M x)."""
        if m.n != self.nvars:
            raise ValueError("matrix size does not match variable count")
        # rows of M give the substituted linear forms: x_i -> sum_j M[i][j] x_j
        lin = []
        for i in range(self.nvars):
            lin.append(HomogForm(self.nvars, 1,
                                 {tuple(1 if j == k else 0 for k in range(self.nvars)): m[i, j]
                                  for j in range(self.nvars)}, self.field))
        return self.compose_forms(lin)

    def compose_forms(self, forms: list["HomogForm"]) -> "HomogForm":
        """Substitute x_i -> forms[i]; all substituted forms share one degree."""
        if len(forms) != self.nvars:
            raise ValueError("one substituted form per variable required")
        degs = {f.degree for f in forms}
        if len(degs) != 1:
            raise ValueError("substituted forms must share a degree")
        (inner_deg,) = degs
        nv = forms[0].nvars
        out = HomogForm.zero(nv, self.degree * inner_deg, self.field)
        power_cache: dict[tuple[int, int], HomogForm] = {}

        def power(i, k):
            if k == 0:
                return HomogForm(nv, 0, {(0,) * nv: self.field.one}, self.field)
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = power(i, k - 1) * forms[i]
            return power_cache[key]

        for e, v in self.coeffs.items():
            term = HomogForm(nv, 0, {(0,) * nv: v}, self.field)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def map_coeffs(self, fn, field=None) -> "HomogForm":
        return HomogForm(self.nvars, self.degree,
                         {e: fn(v) for e, v in self.coeffs.items()}, field or self.field)

    # -- binary-form helpers -----------------------------------------------------

    def _require_binary(self):
        if self.nvars != 2:
            raise UnsupportedError("operation defined for binary forms only")

    def to_unipoly(self, var: str = "z") -> UniPoly:
        """Dehomogenize at y = 1: coefficient of z^k is the x^k y^(d-k) coefficient."""
        self._require_binary()
        coeffs = [self.field.zero] * (self.degree + 1)
        for (i, _j), v in self.coeffs.items():
            coeffs[i] = v
        return UniPoly(coeffs, self.field, var)

    @classmethod
    def from_unipoly(cls, p: UniPoly, degree: int) -> "HomogForm":
        """Homogenize to the given degree (multiplying by a power of y)."""
        if p.degree > degree:
            raise ValueError("homogenization degree below polynomial degree")
        return cls(2, degree, {(k, degree - k): c for k, c in enumerate(p.coeffs)}, p.field)

    def order_at_infinity(self):
        """Vanishing order at (1:0); infinite for the zero form."""
        self._require_binary()
        if self.is_zero():
            return INFINITE_ORDER
        return self.degree - self.to_unipoly().degree

    def order_at_affine(self, alpha):
        """Vanishing order at (alpha:1) for alpha in the coefficient field (or an
        extension of it, passed as an AlgebraElem)."""
        self._require_binary()
        if self.is_zero():
            return INFINITE_ORDER
        if isinstance(alpha, AlgebraElem) and alpha.field != self.field:
            ext: ExtensionField = alpha.field
            p = self.to_unipoly().map_coeffs(ext.coerce, ext)
        else:
            p = self.to_unipoly()
            alpha = p.field.coerce(alpha)
        lin = UniPoly([-alpha, p.field.one], p.field, p.var)
        if p.is_zero():
            return INFINITE_ORDER
        return p.multiplicity_of(lin)

    def vanishing_order(self, point):
        """Vanishing order of a binary form at a projective point (px:py)."""
        self._require_binary()
        px, py = point
        if isinstance(px, AlgebraElem) or isinstance(py, AlgebraElem):
            fld = px.field if isinstance(px, AlgebraElem) else py.field
            px, py = fld.coerce(px), fld.coerce(py)
        else:
            px, py = self.field.coerce(px), self.field.coerce(py)
        if not px and not py:
            raise ValueError("(0, 0) is not a projective point")
        if not py:
            return self.order_at_infinity()
        return self.order_at_affine(px / py)

    def factor_multiplicity(self, h: UniPoly):
        """Multiplicity of an affine factor h(z) in this binary form."""
        self._require_binary()
        if self.is_zero():
            return INFINITE_ORDER
        p = self.to_unipoly(h.var)
        if p.is_zero():
            return INFINITE_ORDER
        return p.multiplicity_of(h)

    def gcd_binary(self, other: "HomogForm") -> "HomogForm":
        """Monic-normalized gcd of two nonzero binary forms."""
        self._require_binary()
        if self.is_zero() or other.is_zero():
            raise ValueError("gcd of binary forms requires both nonzero")
        inf = min(self.order_at_infinity(), other.order_at_infinity())
        g = self.to_unipoly().gcd(other.to_unipoly())
        return HomogForm.from_unipoly(g, g.degree + inf)

    def __repr__(self):
        if self.is_zero():
            return "0"
        names = ["x", "y", "z", "w"][: self.nvars] if self.nvars <= 4 else \
            [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, v in self.items_sorted():
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(v))
            elif v == self.field.one:
                parts.append(mono)
            else:
                parts.append(f"({v})*{mono}")
        return " + ".join(parts)


def vanishing_order(form: HomogForm, point):
    """Largest m such that all order-< m derivatives of the form vanish at the
    point; infinite for the zero form.  Binary forms, characteristic 0."""
    return form.vanishing_order(point)
