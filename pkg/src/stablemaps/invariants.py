"""Conjugacy invariants of degree-2 self-maps of P^1.

The multiplier of a fixed point is the derivative there; the first two
elementary symmetric functions (sigma_1, sigma_2) of the three multipliers,
counted with multiplicity, coordinatize the moduli space of quadratic maps.
They are computed without extracting roots: the finite fixed points
contribute traces of multiplication operators on Q[z]/(fixed-point
polynomial) — a multiple fixed point has multiplier exactly 1, and the trace
weights it by its multiplicity automatically — and a fixed point at infinity
contributes b_1/a_0 (or 1 when it is multiple).

Obstruction data for polynomial maps splits the fixed-point cubic as
(line at the totally invariant point) * (residual quadratic); the totally
invariant point is a repeated fixed point exactly when the residual
quadratic vanishes on it, which is the instability condition inside the
polynomial locus.

Automorphisms of a map with three distinct fixed points are among the six
Moebius maps permuting them; candidates are constructed in the splitting
algebra (at most one quadratic or cubic extension, never a tower) and kept
only if conjugation fixes the map exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DegenerateConfigurationError, DegenerateFixedLocusError,
                     NotPolynomialError, UnsupportedError)
from .exact import (AlgebraElem, ExtensionField, HomogForm, QQ, SquareMatrix,
                    UniPoly, factor_squarefree_irreducible, kernel_basis)
from .mapspace import (RationalMapPN, conjugate, fixed_point_form, is_morphism,
                       totally_invariant_points_n1)

__all__ = ["MultiplierData", "sigma_invariants", "ObstructionData",
           "obstruction_data", "AutGroup", "automorphisms_d2"]


def _trace_of_multiplication(elem: UniPoly, modulus: UniPoly):
    """Trace of multiplication-by-elem on field[z]/(modulus)."""
    n = modulus.degree
    field = modulus.field
    total = field.zero
    col = elem % modulus
    z = UniPoly.x(field, modulus.var)
    for k in range(n):
        total = total + col[k]
        col = (col * z) % modulus
        # after multiplying by z we need the diagonal entry of the next basis
        # column, i.e. the coefficient of z^(k+1)
    return total


def _trace_table(elem: UniPoly, modulus: UniPoly):
    """Traces of elem and elem^2 on field[z]/(modulus)."""
    return (_trace_of_multiplication(elem, modulus),
            _trace_of_multiplication((elem * elem) % modulus, modulus))


@dataclass(frozen=True)
class MultiplierData:
    """Exact multiplier bookkeeping behind (sigma_1, sigma_2)."""

    fixed_form: HomogForm
    finite_modulus: UniPoly | None
    finite_multiplier: UniPoly | None   # representative of the multiplier in the algebra
    infinity_multiplicity: int
    infinity_multiplier: object | None
    sigma1: object
    sigma2: object


def sigma_invariants(phi: RationalMapPN):
    """(sigma_1, sigma_2) of a quadratic morphism of P^1, exactly."""
    data = multiplier_data(phi)
    return data.sigma1, data.sigma2


def multiplier_data(phi: RationalMapPN) -> MultiplierData:
    if phi.n != 1 or phi.d != 2:
        raise UnsupportedError("multiplier invariants implemented for n = 1, d = 2")
    field = phi.field
    if getattr(field, "char", 0) == 2:
        raise UnsupportedError("sigma_2 needs characteristic != 2")
    form = fixed_point_form(phi)
    if form.is_zero():
        raise DegenerateFixedLocusError("fixed-point form vanishes identically")
    if not is_morphism(phi):
        raise DegenerateFixedLocusError("multipliers are defined for morphisms only")
    aff = form.to_unipoly()
    m_inf = int(form.order_at_infinity())
    sigma1 = field.zero
    p2 = field.zero
    lam_rep = None
    modulus = None
    if aff.degree >= 1:
        modulus = aff.monic()
        fz = phi.f.to_unipoly()
        gz = phi.g.to_unipoly()
        g_red = gz % modulus
        gcd, inv_g, _ = g_red.ext_gcd(modulus)
        if gcd.degree != 0:
            raise DegenerateFixedLocusError("denominator vanishes at a fixed point")
        inv_g = inv_g.scale(field.one / gcd[0])
        wronskian = fz.derivative() * gz - fz * gz.derivative()
        lam_rep = (wronskian % modulus) * ((inv_g * inv_g) % modulus) % modulus
        t1, t2 = _trace_table(lam_rep, modulus)
        sigma1 = sigma1 + t1
        p2 = p2 + t2
    lam_inf = None
    if m_inf >= 2:
        lam_inf = field.one
    elif m_inf == 1:
        a0 = phi.f.coeff((2, 0))
        b1 = phi.g.coeff((1, 1))
        lam_inf = b1 / a0
    if lam_inf is not None:
        sigma1 = sigma1 + lam_inf * field.coerce(m_inf)
        p2 = p2 + lam_inf * lam_inf * field.coerce(m_inf)
    two = field.coerce(2)
    sigma2 = (sigma1 * sigma1 - p2) / two
    return MultiplierData(form, modulus, lam_rep, m_inf, lam_inf, sigma1, sigma2)


# -- obstruction data ---------------------------------------------------------------


def _divide_binary_by_linear(form: HomogForm, u, v) -> HomogForm:
    """Exact quotient form / (u x + v y)."""
    field = form.field
    if not u:
        # dividing by a multiple of y strips one y
        aff = form.to_unipoly()
        return HomogForm.from_unipoly(aff.scale(field.one / v), form.degree - 1)
    aff = form.to_unipoly()
    lin = UniPoly([v, u], field, aff.var)
    quotient = aff.exact_div(lin)
    return HomogForm.from_unipoly(quotient, form.degree - 1)


def _normalize_point(p, field):
    px, py = p
    lead = px if px else py
    return (px / lead, py / lead)


def _normalize_triple(vals, field):
    lead = next((v for v in vals if v), None)
    if lead is None:
        return tuple(vals)
    return tuple(v / lead for v in vals)


@dataclass(frozen=True)
class ObstructionData:
    """Totally invariant point plus the residual pair of fixed points."""

    point: tuple
    residual: tuple       # (a : b : c) of the quotient quadratic
    repeated_root: bool


def obstruction_data(phi: RationalMapPN) -> ObstructionData:
    if phi.n != 1 or phi.d != 2:
        raise UnsupportedError("obstruction data implemented for n = 1, d = 2")
    field = phi.field
    tips = [t for t in totally_invariant_points_n1(phi) if t.h.degree == 1]
    if not tips:
        raise NotPolynomialError("no rational totally invariant fixed point")

    def point_key(t):
        px, py = _normalize_point(t.point(), field)
        try:
            return (0, px, py)
        except TypeError:
            return (1, str(px), str(py))
    try:
        tips.sort(key=point_key)
    except TypeError:
        tips.sort(key=lambda t: tuple(str(v) for v in _normalize_point(t.point(), field)))
    chosen = tips[0]
    px, py = chosen.point()
    form = fixed_point_form(phi)
    quotient = _divide_binary_by_linear(form, py, -px)
    a = quotient.coeff((2, 0))
    b = quotient.coeff((1, 1))
    c = quotient.coeff((0, 2))
    value = a * px * px + b * px * py + c * py * py
    return ObstructionData(_normalize_point((px, py), field),
                           _normalize_triple((a, b, c), field),
                           not value)


# -- automorphisms -----------------------------------------------------------------


@dataclass(frozen=True)
class _ConjugatePair:
    """Sum and product of two fixed points living in a tower we refuse."""

    s: object
    p: object


@dataclass(frozen=True)
class AutGroup:
    """Verified automorphisms as projective matrices; ``complete`` is False
    when candidates needing an extension tower were skipped, making the order
    a lower bound."""

    elements: tuple
    order: int
    complete: bool
    extension: ExtensionField | None

    def base_elements(self):
        """Elements whose entries lie in the base field."""
        out = []
        for m in self.elements:
            if self.extension is None:
                out.append(m)
            elif all(isinstance(v, AlgebraElem) and v.rep.degree <= 0
                     for row in m.rows for v in row):
                out.append(m)
        return out


def _normalize_matrix_projectively(m: SquareMatrix) -> SquareMatrix:
    lead = None
    for row in m.rows:
        for v in row:
            if v:
                lead = v
                break
        if lead is not None:
            break
    return m.map_entries(lambda v: v / lead)


def _moebius_through(points, images, field) -> SquareMatrix | None:
    """The projective matrix with A p_i ~ q_i for the three point pairs."""
    rows = []
    for (px, py), (qx, qy) in zip(points, images):
        # (a px + b py) qy - (c px + d py) qx = 0
        rows.append([px * qy, py * qy, -px * qx, -py * qx])
    basis = kernel_basis(rows, field)
    if len(basis) != 1:
        return None
    a, b, c, d = basis[0]
    mat = SquareMatrix([[a, b], [c, d]], field)
    if not mat.det():
        return None
    return _normalize_matrix_projectively(mat)


def _fixed_points_with_extension(phi: RationalMapPN):
    """Three distinct fixed points over the base field or one extension.

    Returns (points, ext, complete); points may hold only a subset when the
    cubic is irreducible with non-square discriminant (complete = False).
    """
    field = phi.field
    form = fixed_point_form(phi)
    if form.is_zero():
        raise DegenerateConfigurationError("every point is fixed")
    aff = form.to_unipoly()
    m_inf = int(form.order_at_infinity())
    if m_inf >= 2 or (aff.degree >= 1 and aff.gcd(aff.derivative()).degree > 0):
        raise DegenerateConfigurationError("repeated fixed points")
    pts = []
    if m_inf == 1:
        pts.append((field.one, field.zero))
    factors = sorted(factor_squarefree_irreducible(aff),
                     key=lambda t: (t[0].degree, str(t[0]))) if aff.degree >= 1 else []
    linear = [h for h, _ in factors if h.degree == 1]
    higher = [h for h, _ in factors if h.degree > 1]
    for h in linear:
        pts.append((-h[0] / h[1], field.one))
    if not higher:
        return pts, None, True
    if len(higher) == 1 and higher[0].degree == 2:
        ext = ExtensionField(higher[0].monic(), gen_name="w")
        alpha = ext.gen()
        beta = -ext.coerce(higher[0].monic()[1]) - alpha
        epts = [(ext.coerce(x), ext.coerce(y)) for x, y in pts]
        epts.extend([(alpha, ext.one), (beta, ext.one)])
        return epts, ext, True
    if len(higher) == 1 and higher[0].degree == 3:
        cubic = higher[0].monic()
        ext = ExtensionField(cubic, gen_name="w")
        alpha = ext.gen()
        lifted = cubic.map_coeffs(ext.coerce, ext)
        lin = UniPoly([-alpha, ext.one], ext, cubic.var)
        cofactor = lifted.exact_div(lin)
        inner = factor_squarefree_irreducible(cofactor)
        roots = [(-h[0] / h[1]) for h, _ in inner if h.degree == 1]
        if len(roots) == 2:
            return [(alpha, ext.one), (roots[0], ext.one), (roots[1], ext.one)], ext, True
        # non-Galois cubic: beta, gamma live in a tower; expose their symmetric data
        s = -cofactor[1]
        p = cofactor[0]
        return [(alpha, ext.one), _ConjugatePair(s, p)], ext, False
    raise DegenerateConfigurationError("unexpected fixed-point factorization")


def _swap_fixing_first(alpha, s, p, ext) -> SquareMatrix | None:
    """The involution fixing (alpha:1) and swapping the conjugate pair with
    sum s and product p, written over the single extension."""
    a_coef = alpha * alpha - p
    c_coef = ext.coerce(2) * alpha - s
    if not a_coef and not c_coef:
        return None
    b_coef = c_coef * p - a_coef * s
    mat = SquareMatrix([[a_coef, b_coef], [c_coef, -a_coef]], ext)
    if not mat.det():
        return None
    return _normalize_matrix_projectively(mat)


def automorphisms_d2(phi: RationalMapPN) -> AutGroup:
    """Verified subgroup of conjugation-stabilizing Moebius maps."""
    if phi.n != 1 or phi.d != 2:
        raise UnsupportedError("automorphism search implemented for n = 1, d = 2")
    pts, ext, complete = _fixed_points_with_extension(phi)
    work_field = ext if ext is not None else phi.field
    phi_w = phi if ext is None else phi.map_coeffs(ext.coerce, ext)
    elements = []
    seen = set()

    def consider(mat):
        if mat is None:
            return
        if conjugate(phi_w, mat) == phi_w:
            key = tuple(tuple(row) for row in mat.rows)
            if key not in seen:
                seen.add(key)
                elements.append(mat)

    if complete:
        from itertools import permutations as _perms
        for perm in _perms(range(len(pts))):
            images = [pts[i] for i in perm]
            consider(_moebius_through(pts, images, work_field))
    else:
        alpha_pt = pts[0]
        pair = pts[1]
        consider(SquareMatrix.identity(2, work_field))
        consider(_swap_fixing_first(alpha_pt[0], pair.s, pair.p, work_field))
    return AutGroup(tuple(elements), len(elements), complete, ext)
