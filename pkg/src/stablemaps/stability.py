"""GIT stability of points of P^N under SL(n+1)-conjugation.

The diagonal torus acts on the coefficient of the monomial x^e in the i-th
component with weight a_i - a.e.  A map is unstable (resp. not stable) iff
after some conjugation a one-parameter subgroup gives every surviving
coefficient a positive (resp. nonnegative) weight.

For n = 1 the module decides completely, in point form: taking a geometric
point P to (1:0) turns the coefficient-vanishing pattern into two vanishing
orders, min(ord_P f, ord_P g) against M1 and ord_P(P_y f - P_x g) against
M2, with the instability thresholds M1 = floor((d+1)/2), M2 = floor((d+3)/2)
and the non-stability thresholds floor(d/2), floor(d/2)+1.  Candidate points
are the roots of gcd(f, g) (of the nonzero component if the other vanishes),
enumerated as irreducible factors with symbolic-root arithmetic.  The
point criterion is validated against a brute-force conjugation oracle in the
test suite rather than assumed.

For n >= 2 only certificates are complete: a verified certificate proves
instability anywhere, but absence of one after the finite conjugation search
yields Undetermined, never a stability claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb, gcd

from .errors import UnsupportedError
from .exact import (ExtensionField, FunctionField, HomogForm, INFINITE_ORDER,
                    PrimeField, QQ, RationalField, SquareMatrix, UniPoly,
                    factor_squarefree_irreducible, nonneg_cone_feasible,
                    strict_cone_feasible)
from .mapspace import (Hyperplane, RationalMapPN, conjugate, is_morphism,
                       is_polynomial_wrt)

__all__ = ["OnePS", "Thresholds", "StabilityVerdict", "OnePSCertificate",
           "PointCertificate", "hm_weight", "torus_verdict", "TorusResult",
           "verdict_n1", "verdict", "verify_certificate",
           "certificate_matrix_form", "orbit_closure_relations_check", "point_orders",
           "STABLE", "SEMISTABLE_NOT_STABLE", "UNSTABLE", "UNDETERMINED"]

STABLE = "stable"
SEMISTABLE_NOT_STABLE = "semistable_not_stable"
UNSTABLE = "unstable"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class OnePS:
    """Integer weights of a diagonal one-parameter subgroup: sum zero,
    nonzero, coprime entries."""

    a: tuple

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        if sum(a) != 0:
            raise ValueError("one-parameter subgroup weights must sum to zero")
        if not any(a):
            raise ValueError("trivial one-parameter subgroup")
        g = 0
        for v in a:
            g = gcd(g, v)
        object.__setattr__(self, "a", tuple(v // g for v in a))

    def normal_form(self) -> "OnePS":
        return OnePS(tuple(sorted(self.a, reverse=True)))

    def __iter__(self):
        return iter(self.a)


@dataclass(frozen=True)
class Thresholds:
    """Order thresholds of the degree-d point criterion."""

    M1: int
    M2: int
    M1s: int
    M2s: int

    @classmethod
    def for_degree(cls, d: int) -> "Thresholds":
        return cls((d + 1) // 2, (d + 3) // 2, d // 2, d // 2 + 1)


@dataclass(frozen=True)
class OnePSCertificate:
    """Conjugation-plus-subgroup witness: weights of every surviving
    coefficient of conjugate(phi, A) under a are positive/nonnegative."""

    A: SquareMatrix
    a: OnePS


@dataclass(frozen=True)
class PointCertificate:
    """Geometric-point witness for n = 1: every root of the binary form h
    satisfies the two order conditions at the stated levels."""

    h: HomogForm
    ord_pencil: object
    ord_forced: object


@dataclass(frozen=True)
class StabilityVerdict:
    kind: str
    certificate: object = None
    note: str = ""

    @property
    def is_semistable(self) -> bool:
        return self.kind in (STABLE, SEMISTABLE_NOT_STABLE)

    def __repr__(self):
        extra = f", note={self.note!r}" if self.note else ""
        return f"StabilityVerdict({self.kind}{extra})"


def hm_weight(a: OnePS, i: int, e) -> int:
    """Torus weight a_i - a.e of the x^e coefficient of the i-th component."""
    ws = a.a if isinstance(a, OnePS) else tuple(a)
    if sum(e) <= 0:
        raise ValueError("exponent vector must have positive total degree")
    return ws[i] - sum(w * k for w, k in zip(ws, e))


def _weight_vectors(phi: RationalMapPN):
    """a.v > 0 for v in this set is the all-positive-weights condition."""
    vecs = set()
    nv = phi.n + 1
    for i, e, _v in phi.coefficient_entries():
        vecs.add(tuple((1 if m == i else 0) - e[m] for m in range(nv)))
    return sorted(vecs)


@dataclass(frozen=True)
class TorusResult:
    kind: str                  # "unstable" | "not_stable" | "fine"
    a: OnePS | None = None


def torus_verdict(phi: RationalMapPN) -> TorusResult:
    """Decide, in the given coordinates only, whether some diagonal subgroup
    gives every nonzero coefficient positive (unstable) or nonnegative
    (not stable) weight."""
    vecs = _weight_vectors(phi)
    a = strict_cone_feasible(vecs)
    if a is not None:
        return TorusResult("unstable", OnePS(a))
    a = nonneg_cone_feasible(vecs)
    if a is not None:
        return TorusResult("not_stable", OnePS(a))
    return TorusResult("fine")


# -- the n = 1 point criterion ---------------------------------------------------


_INF_POINT_FORM = "infinity"


def _y_form(field) -> HomogForm:
    return HomogForm(2, 1, {(0, 1): field.one}, field)


def point_orders(phi: RationalMapPN, h: HomogForm):
    """(ord f, ord g, ord of the forced pencil combination) at the points cut
    out by the binary form h.

    For h = y the point is (1:0) and the forced combination is g.  For an
    affine h the combination at a root (alpha:1) is f - alpha g; when h has
    degree > 1 the order reported is the minimum certified simultaneously at
    all roots of h, which is what certificate verification needs.
    """
    if phi.n != 1:
        raise UnsupportedError("point orders require n = 1")
    f, g = phi.f, phi.g
    field = phi.field
    if h.degree < 1:
        raise ValueError("point certificate form must be nonconstant")
    if h.order_at_infinity() == h.degree:
        # h is a power of y: the point is (1:0)
        return f.order_at_infinity(), g.order_at_infinity(), g.order_at_infinity()
    hp = h.to_unipoly().monic()
    if hp.degree != h.degree:
        raise ValueError("mixed candidate form; split off the infinity factor first")
    o_f = f.factor_multiplicity(hp)
    o_g = g.factor_multiplicity(hp)
    o_comb = _forced_combination_order(f, g, hp, phi.d)
    return o_f, o_g, o_comb


def _forced_combination_order(f: HomogForm, g: HomogForm, hp: UniPoly, d: int):
    field = f.field
    fz = f.to_unipoly()
    gz = g.to_unipoly()
    if fz.is_zero() and gz.is_zero():
        return INFINITE_ORDER
    if hp.degree == 1:
        alpha = -hp[0] / hp[1]
        comb = fz - gz.scale(alpha)
        if comb.is_zero():
            return INFINITE_ORDER
        lin = UniPoly([-alpha, field.one], field, hp.var)
        return comb.multiplicity_of(lin)
    if isinstance(field, (RationalField, PrimeField, FunctionField)):
        ext = ExtensionField(hp, gen_name="a")
        alpha = ext.gen()
        fe = fz.map_coeffs(ext.coerce, ext)
        ge = gz.map_coeffs(ext.coerce, ext)
        comb = fe - ge * alpha
        if comb.is_zero():
            return INFINITE_ORDER
        lin = UniPoly([-alpha, ext.one], ext, hp.var)
        return comb.multiplicity_of(lin)
    # single-extension base field: certify orders en bloc via derivative
    # divisibility, valid in characteristic 0
    if field.char != 0:
        raise UnsupportedError("block order certification needs characteristic 0")
    m = 0
    fk, gk = fz, gz
    z = UniPoly.x(field, hp.var)
    while m <= d:
        u_m = fk - z * gk
        if u_m.is_zero() or (u_m % hp).is_zero():
            m += 1
            fk, gk = fk.derivative(), gk.derivative()
        else:
            break
    return INFINITE_ORDER if m > d else m


def _candidate_forms(phi: RationalMapPN) -> list[HomogForm]:
    f, g = phi.f, phi.g
    field = phi.field
    if f.is_zero():
        base = g
    elif g.is_zero():
        base = f
    else:
        base = f.gcd_binary(g)
    out = []
    if base.order_at_infinity() >= 1:
        out.append(_y_form(field))
    bp = base.to_unipoly()
    if bp.degree >= 1:
        if isinstance(field, ExtensionField):
            factors = [(h, m) for h, m in bp.squarefree_decomposition()]
        else:
            factors = factor_squarefree_irreducible(bp)
        for h, _m in sorted(factors, key=lambda t: (t[0].degree, str(t[0]))):
            out.append(HomogForm.from_unipoly(h, h.degree))
    return out


def verdict_n1(phi: RationalMapPN) -> StabilityVerdict:
    """Complete stability decision for self-maps of P^1."""
    if phi.n != 1:
        raise UnsupportedError("verdict_n1 requires n = 1")
    th = Thresholds.for_degree(phi.d)
    best_unstable = None
    best_notstable = None
    for h in _candidate_forms(phi):
        o_f, o_g, o_comb = point_orders(phi, h)
        o_pencil = min(o_f, o_g)
        if o_pencil >= th.M1 and o_comb >= th.M2 and best_unstable is None:
            best_unstable = PointCertificate(h, o_pencil, o_comb)
        if o_pencil >= th.M1s and o_comb >= th.M2s and best_notstable is None:
            best_notstable = PointCertificate(h, o_pencil, o_comb)
    if best_unstable is not None:
        return StabilityVerdict(UNSTABLE, best_unstable)
    if best_notstable is not None:
        return StabilityVerdict(SEMISTABLE_NOT_STABLE, best_notstable)
    return StabilityVerdict(STABLE)


# -- certificates -----------------------------------------------------------------


def verify_certificate(phi: RationalMapPN, cert, strict: bool) -> bool:
    """Re-derive a certificate from scratch; stored orders are never trusted."""
    if isinstance(cert, OnePSCertificate):
        psi = conjugate(phi, cert.A)
        for i, e, _v in psi.coefficient_entries():
            w = hm_weight(cert.a, i, e)
            if (strict and w <= 0) or (not strict and w < 0):
                return False
        return True
    if isinstance(cert, PointCertificate):
        if phi.n != 1:
            return False
        th = Thresholds.for_degree(phi.d)
        try:
            o_f, o_g, o_comb = point_orders(phi, cert.h)
        except (ValueError, UnsupportedError):
            return False
        o_pencil = min(o_f, o_g)
        if strict:
            return o_pencil >= th.M1 and o_comb >= th.M2
        return o_pencil >= th.M1s and o_comb >= th.M2s
    raise TypeError(f"unknown certificate type {type(cert).__name__}")


def certificate_matrix_form(phi: RationalMapPN, cert: PointCertificate):
    """Convert a rational point certificate into conjugation-plus-subgroup
    form (n = 1): a matrix sending the witness point to (1:0) paired with
    the subgroup (1, -1)."""
    field = phi.field
    h = cert.h
    if h.degree != 1:
        raise UnsupportedError("matrix form needs a degree-1 witness point")
    u = h.coeff((1, 0))
    v = h.coeff((0, 1))
    px, py = -v, u
    if px:
        rows = [[field.one, field.zero], [py, -px]]
    else:
        rows = [[field.zero, field.one], [py, -px]]
    return OnePSCertificate(SquareMatrix(rows, field), OnePS((1, -1)))


# -- the general dispatcher ---------------------------------------------------------


def _detect_invariant_hyperplanes(phi: RationalMapPN) -> list[Hyperplane]:
    nv = phi.n + 1
    field = phi.field
    seen = []
    cands = []
    for i in range(nv):
        cands.append(tuple(field.one if j == i else field.zero for j in range(nv)))
    for i in range(nv):
        for j in range(nv):
            if i == j:
                continue
            for s in (field.one, -field.one):
                cands.append(tuple(field.one if m == i else (s if m == j else field.zero)
                                   for m in range(nv)))
    out = []
    for cand in cands:
        hp = Hyperplane(cand, field)
        if hp.coeffs in seen:
            continue
        seen.append(hp.coeffs)
        if is_polynomial_wrt(phi, hp):
            out.append(hp)
    return out


def _move_hyperplane_last(hp: Hyperplane, field) -> SquareMatrix:
    """Invertible matrix whose last row is the hyperplane, so that in the new
    coordinates the hyperplane becomes x_n = 0."""
    nv = len(hp.coeffs)
    rows = []
    pivot = max(i for i, v in enumerate(hp.coeffs) if v)
    for i in range(nv):
        if i == pivot:
            continue
        rows.append([field.one if j == i else field.zero for j in range(nv)])
    rows.append(list(hp.coeffs))
    return SquareMatrix(rows, field)


def verdict(phi: RationalMapPN) -> StabilityVerdict:
    """Dispatch: complete for n = 1; for n >= 2 stable needs a morphism
    witness and unstable needs a verified certificate, else Undetermined."""
    if phi.n == 1:
        return verdict_n1(phi)
    try:
        if is_morphism(phi):
            return StabilityVerdict(STABLE, note="morphism")
    except UnsupportedError:
        pass
    nonstrict = None
    t = torus_verdict(phi)
    if t.kind == "unstable":
        ident = SquareMatrix.identity(phi.n + 1, phi.field)
        return StabilityVerdict(UNSTABLE, OnePSCertificate(ident, t.a))
    if t.kind == "not_stable":
        ident = SquareMatrix.identity(phi.n + 1, phi.field)
        nonstrict = OnePSCertificate(ident, t.a)
    # finite conjugation search: coordinate permutations, then moves of
    # detected totally invariant hyperplanes into coordinate position
    field = phi.field
    nv = phi.n + 1
    tried = []
    for perm in permutations(range(nv)):
        rows = [[field.one if j == perm[i] else field.zero for j in range(nv)]
                for i in range(nv)]
        tried.append(SquareMatrix(rows, field))
    for hp in _detect_invariant_hyperplanes(phi):
        tried.append(_move_hyperplane_last(hp, field))
    for a_mat in tried:
        if not a_mat.det():
            continue
        t = torus_verdict(conjugate(phi, a_mat))
        if t.kind == "unstable":
            cert = OnePSCertificate(a_mat, t.a)
            if verify_certificate(phi, cert, strict=True):
                return StabilityVerdict(UNSTABLE, cert)
        elif t.kind == "not_stable" and nonstrict is None:
            cert = OnePSCertificate(a_mat, t.a)
            if verify_certificate(phi, cert, strict=False):
                nonstrict = cert
    note = "no certificate found in the finite search"
    if nonstrict is not None:
        note = "not stable (nonstrict certificate attached); semistability undecided"
    return StabilityVerdict(UNDETERMINED, nonstrict, note)


def orbit_closure_relations_check(coeffs, d: int) -> bool:
    """Exact check that the binomial-normalized products a_i a_j / (C(d,i)C(d,j))
    agree whenever i + j = k + l, all indices < d.

    Equivalently C(d,k)C(d,l) a_i a_j = C(d,i)C(d,j) a_k a_l; this is the form
    the shifted-power pattern a_i = (-t)^i C(d,i) a_0 actually satisfies."""
    vals = list(coeffs)
    if len(vals) < d:
        raise ValueError("need the coefficients a_0..a_{d-1} at least")
    idx = range(min(len(vals), d))
    for i in idx:
        for j in idx:
            for k in idx:
                l = i + j - k
                if l < 0 or l >= min(len(vals), d):
                    continue
                lhs = comb(d, k) * comb(d, l) * vals[i] * vals[j]
                rhs = comb(d, i) * comb(d, j) * vals[k] * vals[l]
                if lhs != rhs:
                    return False
    return True
