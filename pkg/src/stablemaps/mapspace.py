"""The space P^N of degree-d rational self-maps of P^n.

A map is an (n+1)-tuple of degree-d forms in n+1 variables over one exact
field, considered up to a common scalar.  Canonical form makes projective
equality literal equality: over Q the coefficient vector is cleared to
coprime integers with the first nonzero coefficient (in graded-lex order,
components first) positive; over every other field the first nonzero
coefficient is scaled to 1.

Resultants: the n = 1 resultant is the classical Sylvester determinant of
the two binary forms; n = 2 uses the Macaulay matrix at the critical degree
with the quotient formula, falling back to an exact one-parameter
perturbation when the denominator minor degenerates.  Dimensions n >= 3 are
refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm

from .errors import SingularMatrixError, UnsupportedError
from .exact import (QQ, AlgebraElem, ExtensionField, FunctionField, HomogForm,
                    RatFunc, SquareMatrix, UniPoly, factor_squarefree_irreducible,
                    monomials)

__all__ = ["RationalMapPN", "Hyperplane", "dimension_N", "conjugate",
           "macaulay_resultant", "is_morphism", "is_polynomial_wrt",
           "PolynomialTest", "totally_invariant_points_n1", "fixed_point_form",
           "TotallyInvariantPoint"]


def dimension_N(n: int, d: int) -> int:
    """Projective dimension of the space of degree-d maps of P^n."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return (n + 1) * comb(n + d, d) - 1


class RationalMapPN:
    """A point of P^N in canonical form."""

    __slots__ = ("n", "d", "components", "field")

    def __init__(self, components, field=None, _canonical=False):
        components = tuple(components)
        if not components:
            raise ValueError("a map needs at least one component")
        field = field or components[0].field
        nvars = components[0].nvars
        d = components[0].degree
        if len(components) != nvars:
            raise ValueError("component count must match variable count")
        for q in components:
            if q.nvars != nvars or q.degree != d or q.field != field:
                raise ValueError("components must share variables, degree, and field")
        if all(q.is_zero() for q in components):
            raise ValueError("all components are zero")
        if not _canonical:
            components = _canonicalize(components, field)
        object.__setattr__(self, "n", nvars - 1)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "field", field)

    def __setattr__(self, *a):
        raise AttributeError("RationalMapPN is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def raw(cls, components, field=None):
        """A map with the given literal scaling (no canonicalization); local
        models use this to keep valuation bookkeeping intact."""
        return cls(components, field, _canonical=True)

    @classmethod
    def from_binary_coeffs(cls, f_coeffs, g_coeffs, field=QQ):
        """n = 1 map from descending-power coefficient lists (a_0..a_d, b_0..b_d):
        f = sum a_i x^(d-i) y^i."""
        d = max(len(f_coeffs), len(g_coeffs)) - 1
        f = HomogForm(2, d, {(d - i, i): field.coerce(v)
                             for i, v in enumerate(f_coeffs)}, field)
        g = HomogForm(2, d, {(d - i, i): field.coerce(v)
                             for i, v in enumerate(g_coeffs)}, field)
        return cls((f, g), field)

    @classmethod
    def from_coeff_dicts(cls, n, d, dicts, field=QQ):
        comps = [HomogForm(n + 1, d, dct, field) for dct in dicts]
        return cls(comps, field)

    # -- accessors -----------------------------------------------------------

    @property
    def f(self) -> HomogForm:
        if self.n != 1:
            raise UnsupportedError("numerator/denominator view requires n = 1")
        return self.components[0]

    @property
    def g(self) -> HomogForm:
        if self.n != 1:
            raise UnsupportedError("numerator/denominator view requires n = 1")
        return self.components[1]

    def coefficient_count(self) -> int:
        return sum(len(q.coeffs) for q in self.components)

    def coefficient_entries(self):
        """(component, exponent, value) triples in canonical order."""
        out = []
        for i, q in enumerate(self.components):
            for e, v in q.items_sorted():
                out.append((i, e, v))
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalMapPN):
            return NotImplemented
        return (self.n, self.d, self.field) == (other.n, other.d, other.field) \
            and self.components == other.components

    def __hash__(self):
        return hash((self.n, self.d, self.components))

    def map_coeffs(self, fn, field) -> "RationalMapPN":
        return RationalMapPN([q.map_coeffs(fn, field) for q in self.components], field)

    def __repr__(self):
        return "(" + " : ".join(str(q) for q in self.components) + ")"


def _canonicalize(components, field):
    first = None
    for q in components:
        for _e, v in q.items_sorted():
            first = v
            break
        if first is not None:
            break
    if field == QQ:
        den = 1
        num_gcd = 0
        for q in components:
            for v in q.coeffs.values():
                den = lcm(den, v.denominator)
        for q in components:
            for v in q.coeffs.values():
                num_gcd = gcd(num_gcd, int(v * den))
        scale = Fraction(den, num_gcd)
        if first < 0:
            scale = -scale
    else:
        scale = field.one / first
    return tuple(q.scale(scale) for q in components)


@dataclass(frozen=True)
class Hyperplane:
    """A projective hyperplane sum a_i x_i = 0."""

    coeffs: tuple
    field: object

    def __post_init__(self):
        vals = tuple(self.field.coerce(v) for v in self.coeffs)
        if not any(vals):
            raise ValueError("hyperplane needs a nonzero coefficient")
        first = next(v for v in vals if v)
        vals = tuple(v / first for v in vals)
        object.__setattr__(self, "coeffs", vals)

    def linear_form(self) -> HomogForm:
        nv = len(self.coeffs)
        return HomogForm(nv, 1, {tuple(1 if j == i else 0 for j in range(nv)): v
                                 for i, v in enumerate(self.coeffs) if v}, self.field)


def conjugate(phi: RationalMapPN, a: SquareMatrix) -> RationalMapPN:
    """Canonical form of A . phi . A^{-1}."""
    return RationalMapPN(conjugate_raw(phi, a), phi.field)


def conjugate_raw(phi: RationalMapPN, a: SquareMatrix) -> tuple:
    """Components of A . phi . adj(A), not canonicalized.

    Using the adjugate instead of the inverse multiplies the result by the
    scalar det(A)^d, which is invisible projectively and keeps the entries
    polynomial in the entries of A.
    """
    if a.n != phi.n + 1:
        raise ValueError("matrix size does not match the map dimension")
    if a.field != phi.field:
        a = a.map_entries(phi.field.coerce, phi.field)
    if not a.det():
        raise SingularMatrixError("conjugation by a singular matrix")
    b = a.adjugate()
    pushed = [q.compose_linear(b) for q in phi.components]
    nv = phi.n + 1
    out = []
    for i in range(nv):
        acc = HomogForm.zero(nv, phi.d, phi.field)
        for j in range(nv):
            if a[i, j]:
                acc = acc + pushed[j] * a[i, j]
        out.append(acc)
    return tuple(out)


# -- resultants ---------------------------------------------------------------


def _sylvester_resultant(f: HomogForm, g: HomogForm):
    d = f.degree
    field = f.field
    fr = [f.coeff((d - i, i)) for i in range(d + 1)]
    gr = [g.coeff((d - i, i)) for i in range(d + 1)]
    size = 2 * d
    rows = []
    for k in range(d):
        rows.append([field.zero] * k + fr + [field.zero] * (d - 1 - k))
    for k in range(d):
        rows.append([field.zero] * k + gr + [field.zero] * (d - 1 - k))
    return SquareMatrix(rows, field).det()


def _macaulay_data(d: int):
    t = 3 * d - 2
    mons = monomials(3, t)
    index = {m: i for i, m in enumerate(mons)}
    assignments = []
    dodu = []
    for m in mons:
        big = [i for i in range(3) if m[i] >= d]
        assignments.append(big[0])
        if len(big) >= 2:
            dodu.append(m)
    return t, mons, index, assignments, dodu


def _macaulay_matrix(q, d, mons, index, assignments):
    field = q[0].field
    size = len(mons)
    rows = []
    for m, owner in zip(mons, assignments):
        row = [field.zero] * size
        shift = list(m)
        shift[owner] -= d
        for e, v in q[owner].coeffs.items():
            target = tuple(shift[k] + e[k] for k in range(3))
            row[index[target]] = row[index[target]] + v
        rows.append(row)
    return rows


def _det(rows, field):
    return SquareMatrix(rows, field).det()


def _interp_det(rows_fn, deg_bound, field):
    """Determinant of a matrix whose entries are degree-<=1 polynomials in a
    parameter, via evaluation at deg_bound+1 rational points."""
    xs = []
    k = 0
    while len(xs) < deg_bound + 1:
        xs.append(Fraction(k))
        k += 1
    ys = [_det(rows_fn(x), field) for x in xs]
    # Lagrange interpolation in the parameter
    poly = UniPoly.zero(field, "e")
    for i, xi in enumerate(xs):
        term = UniPoly.one(field, "e")
        denom = field.one
        for j, xj in enumerate(xs):
            if i == j:
                continue
            term = term * UniPoly([field.coerce(-xj), field.one], field, "e")
            denom = denom * (field.coerce(xi) - field.coerce(xj))
        poly = poly + term.scale(ys[i] / denom)
    return poly


def _macaulay_n2(phi: RationalMapPN):
    d = phi.d
    field = phi.field
    t, mons, index, assignments, dodu = _macaulay_data(d)
    q = phi.components
    big = _macaulay_matrix(q, d, mons, index, assignments)
    dodu_idx = [index[m] for m in dodu]
    small = [[big[i][j] for j in dodu_idx] for i in dodu_idx]
    det_small = _det(small, field)
    if det_small:
        return _det(big, field) / det_small
    # perturb by the pure-power system, whose Macaulay minors are units
    ref = [HomogForm(3, d, {tuple(d if k == i else 0 for k in range(3)): field.one},
                     field) for i in range(3)]

    def rows_at(eps):
        qe = [q[i] + ref[i] * field.coerce(eps) for i in range(3)]
        return _macaulay_matrix(qe, d, mons, index, assignments)

    def small_at(eps):
        rows = rows_at(eps)
        return [[rows[i][j] for j in dodu_idx] for i in dodu_idx]

    if getattr(field, "char", 0) != 0 and field.char <= len(mons) + 1:
        raise UnsupportedError("perturbed Macaulay resultant needs a large field")
    det_big_poly = _interp_det(rows_at, len(mons), field)
    det_small_poly = _interp_det(small_at, len(dodu_idx), field)
    res_poly = det_big_poly.exact_div(det_small_poly)
    return res_poly.eval(field.zero) if not res_poly.is_zero() else field.zero


def macaulay_resultant(phi: RationalMapPN):
    """Resultant of the component forms; zero iff the map is not a morphism.

    As a polynomial in the map coefficients the resultant is homogeneous of
    degree (n+1) d^n.
    """
    if phi.n == 1:
        return _sylvester_resultant(phi.components[0], phi.components[1])
    if phi.n == 2:
        return _macaulay_n2(phi)
    raise UnsupportedError("resultants implemented for n <= 2 only")


def is_morphism(phi: RationalMapPN) -> bool:
    return bool(macaulay_resultant(phi))


# -- polynomial maps -----------------------------------------------------------


@dataclass(frozen=True)
class PolynomialTest:
    """Outcome of the hyperplane-invariance test."""

    kind: str          # "no" | "yes" | "yes_degenerate"
    scale: object = None

    def __bool__(self):
        return self.kind != "no"


def is_polynomial_wrt(phi: RationalMapPN, ell: Hyperplane) -> PolynomialTest:
    """Test whether sum a_i q_i is proportional to (sum a_i x_i)^d."""
    field = phi.field
    combo = HomogForm.zero(phi.n + 1, phi.d, field)
    for a_i, q in zip(ell.coeffs, phi.components):
        if a_i:
            combo = combo + q * a_i
    if combo.is_zero():
        return PolynomialTest("yes_degenerate", field.zero)
    power = ell.linear_form()
    target = power
    for _ in range(phi.d - 1):
        target = target * power
    lead = target.items_sorted()[0]
    ratio = combo.coeff(lead[0]) / lead[1]
    if combo == target * ratio:
        return PolynomialTest("yes", ratio)
    return PolynomialTest("no")


def fixed_point_form(phi: RationalMapPN) -> HomogForm:
    """The degree d+1 binary form f y - g x; identically zero exactly for the
    identity-like degenerate pencils, which callers treat as all-points-fixed."""
    if phi.n != 1:
        raise UnsupportedError("fixed-point form requires n = 1")
    x = HomogForm(2, 1, {(1, 0): phi.field.one}, phi.field)
    y = HomogForm(2, 1, {(0, 1): phi.field.one}, phi.field)
    return phi.f * y - phi.g * x


@dataclass(frozen=True)
class TotallyInvariantPoint:
    """An irreducible factor h of the fixed-point form with h(f, g) = c h^d."""

    h: HomogForm
    scale: object
    degenerate: bool   # c = 0
    is_orbit: bool     # deg h > 1: a Galois orbit of points

    def point(self):
        """The projective point for a linear h = ux + vy, namely (-v : u)."""
        if self.h.degree != 1:
            raise ValueError("orbit entry has no single rational point")
        u = self.h.coeff((1, 0))
        v = self.h.coeff((0, 1))
        return (-v, u)


def _h_of_map(h: HomogForm, phi: RationalMapPN) -> HomogForm:
    return h.compose_forms([phi.f, phi.g])


def _proportionality_scale(value: HomogForm, target: HomogForm):
    """c with value = c*target, None if not proportional (target nonzero)."""
    if value.is_zero():
        return value.field.zero
    lead = target.items_sorted()[0]
    ratio = value.coeff(lead[0]) / lead[1]
    if value == target * ratio:
        return ratio
    return None


def totally_invariant_points_n1(phi: RationalMapPN) -> list[TotallyInvariantPoint]:
    """All irreducible h over the base field dividing the fixed-point form
    with h(f, g) proportional to h^d."""
    if phi.n != 1:
        raise UnsupportedError("use is_polynomial_wrt with candidate hyperplanes for n > 1")
    field = phi.field
    form = fixed_point_form(phi)
    candidates: list[HomogForm] = []
    if form.is_zero():
        # fy = gx forces f = hx, g = hy; candidate points sit on the common factor
        h_common = phi.f.gcd_binary(phi.g)
        candidates.extend(_binary_irreducible_factors(h_common))
    else:
        candidates.extend(_binary_irreducible_factors(form))
    out = []
    seen = set()
    for h in candidates:
        if h in seen:
            continue
        seen.add(h)
        target = h
        for _ in range(phi.d - 1):
            target = target * h
        scale = _proportionality_scale(_h_of_map(h, phi), target)
        if scale is None:
            continue
        out.append(TotallyInvariantPoint(h, scale, not scale, h.degree > 1))
    out.sort(key=lambda t: (t.h.degree, str(t.h)))
    return out


def _binary_irreducible_factors(form: HomogForm) -> list[HomogForm]:
    """Distinct monic-normalized irreducible binary factors over the base field."""
    field = form.field
    out = []
    inf_ord = form.order_at_infinity()
    if inf_ord >= 1:
        out.append(HomogForm(2, 1, {(0, 1): field.one}, field))
    p = form.to_unipoly()
    if p.degree >= 1:
        for h, _mult in factor_squarefree_irreducible(p):
            out.append(HomogForm.from_unipoly(h, h.degree))
    return out
