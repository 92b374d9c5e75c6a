"""Semistable reduction of rational maps over discrete valuation rings.

A local model is a map over the fraction field K (Q with a p-adic place, or
Q(c) with a finite or infinite place) together with a chosen coefficient
scaling.  Normalization scales by a uniformizer power until the minimal
coefficient valuation is exactly 0; reduction then maps coefficients to the
residue field.

``semistable_model`` runs the descent: while the reduction is unstable,
extract a destabilizing certificate over the residue field, lift its matrix
to the valuation ring (unit determinant is preserved because the reduced
determinant is nonzero), conjugate, and follow with diag(pi^(s a_i)) where
s is the smallest positive rational making the post-normalization minimum
valuation land on a coefficient of non-positive weight — this choice
guarantees the same certificate cannot immediately re-apply.  A fractional
s triggers a ramified base change c -> c0 + (c - c0)^e (function-field
places only; p-adic models raise RamificationNeeded).  Every move is
recorded as a replayable step and every iteration logs its valuation
profile; termination is enforced by max_steps since no potential function
is proven.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (GenericFiberNotSemistableError, NonTerminatingError,
                     NotNormalizedError, RamificationNeededError,
                     ResidueExtensionNeededError, UndeterminedError,
                     UnsupportedError)
from .exact import (QQ, FunctionField, HomogForm, Place, RatFunc, SquareMatrix,
                    UniPoly, factor_squarefree_irreducible)
from .mapspace import RationalMapPN, conjugate_raw, macaulay_resultant
from .stability import (SEMISTABLE_NOT_STABLE, STABLE, UNDETERMINED, UNSTABLE,
                        OnePSCertificate, PointCertificate, StabilityVerdict,
                        certificate_matrix_form, hm_weight, verdict)

__all__ = ["LocalModel", "ReductionReport", "ReductionCheck", "normalize_model",
           "reduce_mod", "has_semistable_reduction", "semistable_model",
           "scan_family", "FamilyScanEntry", "bad_places", "replay_steps",
           "model_from_family"]


@dataclass(frozen=True)
class LocalModel:
    """A map over K with a place of K and a chosen coefficient scaling."""

    phi: RationalMapPN
    place: Place
    normalized: bool = False

    def valuations(self):
        """(component, exponent, valuation) for every nonzero coefficient."""
        out = []
        for i, e, v in self.phi.coefficient_entries():
            out.append((i, e, self.place.valuation(v)))
        return out

    def min_valuation(self):
        return min(v for _i, _e, v in self.valuations())

    def profile(self):
        """Valuation multiset, descending: the recorded descent measure."""
        return tuple(sorted((v for _i, _e, v in self.valuations()), reverse=True))


def model_from_family(phi: RationalMapPN, place: Place) -> LocalModel:
    return LocalModel(phi, place, normalized=False)


def _scale_components(phi: RationalMapPN, place: Place, k: int) -> RationalMapPN:
    comps = [q.map_coeffs(lambda v: place.scale_by_uniformizer_power(v, k))
             for q in phi.components]
    return RationalMapPN.raw(comps, phi.field)


def normalize_model(m: LocalModel) -> LocalModel:
    model, _k = _normalize_with_shift(m)
    return model


def _normalize_with_shift(m: LocalModel):
    mv = m.min_valuation()
    if mv == 0:
        return LocalModel(m.phi, m.place, normalized=True), 0
    k = -mv
    if k != int(k):
        raise ArithmeticError("fractional valuation in normalization")
    k = int(k)
    return LocalModel(_scale_components(m.phi, m.place, k), m.place, normalized=True), k


def reduce_mod(m: LocalModel) -> RationalMapPN:
    """Coefficient-wise reduction modulo the maximal ideal (canonical form)."""
    if not m.normalized:
        raise NotNormalizedError("reduce_mod requires a normalized model")
    place = m.place
    rf = place.residue_field()
    comps = []
    for q in m.phi.components:
        comps.append(HomogForm(q.nvars, q.degree,
                               {e: place.residue(v) for e, v in q.coeffs.items()}, rf))
    return RationalMapPN(comps, rf)


@dataclass(frozen=True)
class ReductionCheck:
    semistable: bool | None      # None: verdict undetermined (n >= 2)
    verdict: StabilityVerdict
    residue: RationalMapPN


def has_semistable_reduction(m: LocalModel) -> ReductionCheck:
    norm = normalize_model(m)
    residue = reduce_mod(norm)
    v = verdict(residue)
    if v.kind == UNDETERMINED:
        return ReductionCheck(None, v, residue)
    return ReductionCheck(v.kind in (STABLE, SEMISTABLE_NOT_STABLE), v, residue)


@dataclass(frozen=True)
class ReductionReport:
    place: Place
    steps: tuple
    profiles: tuple
    final_model: LocalModel
    residue: RationalMapPN
    residue_verdict: StabilityVerdict
    ramification_e: int
    param_image: UniPoly | None   # image of c under the recorded base changes


def _serialize_matrix(a: SquareMatrix, field):
    return [[field.format(v) for v in row] for row in a.rows]


def _base_change_inner(place: Place, e: int) -> UniPoly:
    """The substitution polynomial: coefficients f(c) become f(inner(c))."""
    var = place.var
    if place.kind == "infinite":
        return UniPoly.monomial(e, 1, QQ, var)
    if place.kind == "finite" and place.pi.degree == 1:
        c0 = -place.pi[0]
        base = UniPoly([-c0, Fraction(1)], QQ, var)
        shifted = base ** e
        return shifted + UniPoly.constant(c0, QQ, var)
    raise RamificationNeededError(
        f"no rational ramified cover at place {place.spec_string()}")


def _apply_base_change(phi: RationalMapPN, inner: UniPoly) -> RationalMapPN:
    comps = [q.map_coeffs(lambda v: v.substitute(inner)) for q in phi.components]
    return RationalMapPN.raw(comps, phi.field)


def _lift_certificate_matrix(residue_map: RationalMapPN, cert, place: Place,
                             field) -> tuple[SquareMatrix, tuple]:
    if isinstance(cert, PointCertificate):
        if cert.h.degree != 1:
            raise ResidueExtensionNeededError(
                "destabilizing point is not rational over the residue field")
        cert = certificate_matrix_form(residue_map, cert)
    if not isinstance(cert, OnePSCertificate):
        raise UnsupportedError("cannot lift this certificate form")
    lifted = cert.A.map_entries(place.lift, field)
    if place.valuation(lifted.det()) != 0:
        raise ArithmeticError("lifted conjugation lost its unit determinant")
    return lifted, tuple(cert.a)


def _diagonal_step_size(model: LocalModel, a: tuple):
    """Smallest positive rational s such that after conjugating by
    diag(pi^(s a_i)) and renormalizing, the minimum valuation is attained by
    a coefficient of non-positive weight."""
    data = []
    for i, e, v in model.valuations():
        data.append((v, hm_weight(a, i, e)))
    neg = [(v, w) for v, w in data if w <= 0]
    if not neg:
        raise GenericFiberNotSemistableError(
            "destabilizing subgroup applies to the generic fiber")
    candidates = set()
    for v_i, w_i in neg:
        for v_j, w_j in data:
            if w_j > w_i:
                s = Fraction(v_i - v_j, w_j - w_i)
                if s > 0:
                    candidates.add(s)
    for s in sorted(candidates):
        shifted = [(v + s * w, w) for v, w in data]
        m_all = min(val for val, _w in shifted)
        if any(w <= 0 and val == m_all for val, w in shifted):
            return s
    raise ArithmeticError("no diagonal step size found")


def _apply_diagonal(model: LocalModel, a: tuple, s: int) -> LocalModel:
    place = model.place
    new_comps = []
    for i, q in enumerate(model.phi.components):
        new = {}
        for e, v in q.coeffs.items():
            w = hm_weight(a, i, e)
            new[e] = place.scale_by_uniformizer_power(v, s * w)
        new_comps.append(HomogForm(q.nvars, q.degree, new, q.field))
    return LocalModel(RationalMapPN.raw(new_comps, model.phi.field), place, False)


def semistable_model(m: LocalModel, max_steps: int = 64) -> ReductionReport:
    """Iterate lift-conjugate-rescale until the reduction is semistable."""
    place = m.place
    field = m.phi.field
    generic = verdict(m.phi)
    if generic.kind == UNDETERMINED:
        raise UndeterminedError("generic fiber verdict is undetermined")
    if generic.kind == UNSTABLE:
        raise GenericFiberNotSemistableError("generic fiber is not semistable")

    steps: list[dict] = []
    profiles: list[tuple] = []
    cur = LocalModel(m.phi, place, False)
    e_total = 1
    param_image = UniPoly.x(QQ, place.var) if place.kind != "p-adic" else None

    for _ in range(max_steps):
        cur, k = _normalize_with_shift(cur)
        if k:
            steps.append({"type": "rescale", "k": k})
        profiles.append(cur.profile())
        residue = reduce_mod(cur)
        v = verdict(residue)
        if v.kind == UNDETERMINED:
            raise UndeterminedError("residue verdict is undetermined")
        if v.kind in (STABLE, SEMISTABLE_NOT_STABLE):
            return ReductionReport(place, tuple(steps), tuple(profiles), cur,
                                   residue, v, e_total, param_image)
        lifted, a = _lift_certificate_matrix(residue, v.certificate, place, field)
        cur = LocalModel(RationalMapPN.raw(conjugate_raw(cur.phi, lifted), field),
                         place, False)
        steps.append({"type": "lift_conjugation",
                      "A": _serialize_matrix(lifted, field)})
        cur, k = _normalize_with_shift(cur)
        if k:
            steps.append({"type": "rescale", "k": k})
        s = _diagonal_step_size(cur, a)
        if s.denominator > 1:
            if place.kind == "p-adic":
                raise RamificationNeededError(
                    f"step size {s} needs a ramified extension of Q_{place.p}")
            e = s.denominator
            inner = _base_change_inner(place, e)
            cur = LocalModel(_apply_base_change(cur.phi, inner), place, False)
            steps.append({"type": "base_change", "e": e})
            param_image = param_image.compose(inner)
            e_total *= e
            s = s * e
        s_int = int(s)
        cur = _apply_diagonal(cur, a, s_int)
        steps.append({"type": "diagonal", "a": list(a), "s": s_int})
    raise NonTerminatingError(
        f"no semistable model within {max_steps} steps",
        diagnostics={"steps": steps, "profiles": profiles})


def replay_steps(m: LocalModel, steps) -> LocalModel:
    """Re-apply a recorded step list; reproduces the report's final model
    bit-exactly."""
    place = m.place
    field = m.phi.field
    cur = LocalModel(m.phi, place, False)
    for step in steps:
        kind = step["type"]
        if kind == "rescale":
            cur = LocalModel(_scale_components(cur.phi, place, step["k"]),
                             place, True)
        elif kind == "lift_conjugation":
            a = SquareMatrix([[field.parse(v) for v in row] for row in step["A"]],
                             field)
            cur = LocalModel(RationalMapPN.raw(conjugate_raw(cur.phi, a), field),
                             place, False)
        elif kind == "base_change":
            inner = _base_change_inner(place, step["e"])
            cur = LocalModel(_apply_base_change(cur.phi, inner), place, False)
        elif kind == "diagonal":
            cur = _apply_diagonal(cur, tuple(step["a"]), step["s"])
        else:
            raise ValueError(f"unknown step type {kind!r}")
    return cur


# -- family scanning -------------------------------------------------------------


def _candidate_places(family: RationalMapPN) -> list[Place]:
    """Places where the fiber could fail: factors of the resultant numerator
    and denominator, places where normalization changes the coefficient
    support (factors of any coefficient numerator or denominator), and the
    infinite place.  Everywhere else all coefficients are units, reduction is
    coefficient-wise, and the reduced resultant is the reduced unit value of
    the resultant, so the fiber is a morphism."""
    field = family.field
    if not isinstance(field, FunctionField):
        raise UnsupportedError("scan_family expects a family over Q(c)")
    polys = []
    res = macaulay_resultant(family)
    if isinstance(res, RatFunc):
        if res.is_zero():
            raise ValueError("identically degenerate family: resultant is zero")
        polys.extend([res.num, res.den])
    for q in family.components:
        for v in q.coeffs.values():
            polys.extend([v.num, v.den])
    seen = {}
    for p in polys:
        if p.degree < 1:
            continue
        for h, _m in factor_squarefree_irreducible(p):
            seen.setdefault((h.degree, str(h)), h)
    places = [Place.finite(seen[k]) for k in sorted(seen)]
    places.append(Place.infinite(field.var))
    return places


@dataclass(frozen=True)
class FamilyScanEntry:
    place: Place
    check: ReductionCheck

    @property
    def good(self):
        return self.check.semistable


def scan_family(family: RationalMapPN) -> list[FamilyScanEntry]:
    """Check has_semistable_reduction at every candidate place of the family;
    all non-candidate places are morphism fibers."""
    out = []
    for place in _candidate_places(family):
        model = LocalModel(family, place, False)
        out.append(FamilyScanEntry(place, has_semistable_reduction(model)))
    return out


def bad_places(entries: list[FamilyScanEntry]) -> list[Place]:
    return [e.place for e in entries if e.check.semistable is not True]
