"""Projective-bundle classes over P^1 from two-chart transition data.

A cocycle is an invertible Laurent-matrix transition function on the
overlap of the finite chart (coordinate c) and the chart at infinity
(coordinate u = 1/c); its Birkhoff factorization T = L . diag(c^k) . R
yields the splitting type, normalized so the minimal twist is 0 since a
projective bundle only sees twists up to a common shift.  Factorization
witnesses are verified on every call.

Chart models pair a family over the chart coordinate with the fiberwise
semistability scan of its interior places; ``assemble_bundle`` checks the
transition identifies the two families on the overlap and consolidates the
fiber reports into a bundle-level answer.

For quadratic polynomial families the transition onto the monic centered
normal form z^2 + kappa is in closed form (completing the square); solving
for transitions between arbitrary chart families is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (BadFiberError, ChartMismatchError, NotACocycleError,
                     TransitionFailsError)
from .exact import (FF_C, FunctionField, LaurentMatrix, LaurentPoly, QQ, RatFunc,
                    SquareMatrix, UniPoly, birkhoff_factorization)
from .mapspace import RationalMapPN, conjugate
from .reduction import FamilyScanEntry, scan_family

__all__ = ["Cocycle", "SplittingType", "BirkhoffWitness", "ChartModel",
           "splitting_type", "pullback_power", "verify_transition",
           "assemble_bundle", "quadratic_polynomial_transition"]


class Cocycle:
    """An invertible transition matrix over Q[c, 1/c]."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: LaurentMatrix):
        if matrix.unit_det() is None:
            raise NotACocycleError(
                f"determinant {matrix.det()} is not a unit of the Laurent ring")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):
        raise AttributeError("Cocycle is immutable")

    @classmethod
    def from_rows(cls, rows, var="c"):
        conv = []
        for row in rows:
            out = []
            for v in row:
                if isinstance(v, LaurentPoly):
                    out.append(v)
                elif isinstance(v, RatFunc):
                    out.append(LaurentPoly.from_ratfunc(v))
                elif isinstance(v, UniPoly):
                    out.append(LaurentPoly.from_unipoly(v))
                else:
                    out.append(LaurentPoly({0: v}, var))
            conv.append(out)
        return cls(LaurentMatrix(conv, var))

    @property
    def n(self):
        return self.matrix.n

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.matrix == other.matrix

    def to_square_matrix(self, field: FunctionField) -> SquareMatrix:
        return SquareMatrix([[v.to_ratfunc() for v in row]
                             for row in self.matrix.rows], field)

    def __repr__(self):
        return f"Cocycle({self.matrix})"


@dataclass(frozen=True)
class SplittingType:
    """Sorted non-decreasing twists normalized to start at 0."""

    twists: tuple

    @classmethod
    def from_exponents(cls, exps) -> "SplittingType":
        exps = sorted(int(e) for e in exps)
        low = exps[0]
        return cls(tuple(e - low for e in exps))

    def __iter__(self):
        return iter(self.twists)

    def scaled(self, l: int) -> "SplittingType":
        return SplittingType(tuple(e * l for e in self.twists))

    def __repr__(self):
        return f"O + {' + '.join(f'O({m})' for m in self.twists[1:])}" \
            if len(self.twists) > 1 else "O"


@dataclass(frozen=True)
class BirkhoffWitness:
    """Retained factorization data; verify() recomposes it exactly."""

    L: LaurentMatrix
    exponents: tuple
    R: LaurentMatrix
    cocycle: Cocycle

    def verify(self) -> bool:
        var = self.cocycle.matrix.var
        n = self.cocycle.n
        diag = LaurentMatrix(
            [[LaurentPoly({self.exponents[i]: 1} if i == j else {}, var)
              for j in range(n)] for i in range(n)], var)
        if self.L * diag * self.R != self.cocycle.matrix:
            return False
        if not self.L.is_polynomial_in_c() or not self.R.is_polynomial_in_inv_c():
            return False
        dl, dr = self.L.det(), self.R.det()
        return dl.is_monomial() and dl.val() == 0 and dr.is_monomial() and dr.deg() == 0


def splitting_type(t: Cocycle) -> tuple[SplittingType, BirkhoffWitness]:
    """Birkhoff–Grothendieck type of the bundle glued by the cocycle."""
    L, exps, R = birkhoff_factorization(t.matrix)
    witness = BirkhoffWitness(L, tuple(exps), R, t)
    if not witness.verify():
        raise ArithmeticError("Birkhoff factorization witness failed verification")
    return SplittingType.from_exponents(exps), witness


def pullback_power(t: Cocycle, l: int) -> Cocycle:
    """Substitute c -> c^l in every entry (composition with the degree-l cover)."""
    if l < 1:
        raise ValueError("pullback exponent must be >= 1")
    return Cocycle(t.matrix.substitute_power(l))


@dataclass(frozen=True)
class ChartModel:
    """A family over one chart of P^1 with its interior fiber scan."""

    chart: str                      # "finite" (coordinate c) | "infinite" (u = 1/c)
    family: RationalMapPN
    fiber_entries: tuple

    @classmethod
    def build(cls, chart: str, family: RationalMapPN) -> "ChartModel":
        if chart not in ("finite", "infinite"):
            raise ChartMismatchError(f"unknown chart {chart!r}")
        if not isinstance(family.field, FunctionField):
            raise ChartMismatchError("chart families live over a function field")
        entries = tuple(e for e in scan_family(family)
                        if e.place.kind == "finite")
        return cls(chart, family, entries)

    def interior_ok(self) -> bool:
        return all(e.check.semistable is True for e in self.fiber_entries)

    @property
    def var(self) -> str:
        return self.family.field.var


def _family_in_reciprocal_coordinate(family: RationalMapPN,
                                     target: FunctionField) -> RationalMapPN:
    """Rewrite a family over Q(u) as a family over Q(c) via u = 1/c."""
    comps = [q.map_coeffs(lambda v: v.substitute_reciprocal(target.var), target)
             for q in family.components]
    return RationalMapPN(comps, target)


def verify_transition(u_chart: ChartModel, v_chart: ChartModel, t: Cocycle) -> bool:
    """conjugate(U.family, T) must equal V.family written in u = 1/c."""
    if u_chart.chart != "finite" or v_chart.chart != "infinite":
        raise ChartMismatchError("expected a finite chart and an infinite chart")
    if u_chart.var == v_chart.var:
        raise ChartMismatchError("charts must use distinct coordinates")
    field = u_chart.family.field
    t_mat = t.to_square_matrix(field)
    conj = conjugate(u_chart.family, t_mat)
    v_in_c = _family_in_reciprocal_coordinate(v_chart.family, field)
    return conj == v_in_c


def assemble_bundle(u_chart: ChartModel, v_chart: ChartModel, t: Cocycle):
    """Glue the two chart models along the transition; returns the splitting
    type and the consolidated fiberwise report."""
    if not verify_transition(u_chart, v_chart, t):
        raise TransitionFailsError("transition does not identify the charts")
    for chart in (u_chart, v_chart):
        for entry in chart.fiber_entries:
            if entry.check.semistable is not True:
                raise BadFiberError(
                    f"{chart.chart} chart fails at {entry.place.spec_string()}")
    stype, witness = splitting_type(t)
    report = {
        "finite_chart": [(e.place.spec_string(), e.check.verdict.kind)
                         for e in u_chart.fiber_entries],
        "infinite_chart": [(e.place.spec_string(), e.check.verdict.kind)
                           for e in v_chart.fiber_entries],
    }
    return stype, report, witness


def quadratic_polynomial_transition(gamma, delta, eps, field: FunctionField = FF_C):
    """Affine change taking z -> gamma z^2 + delta z + eps to z^2 + kappa.

    Returns ([[gamma, delta/2], [0, 1]], kappa) with
    kappa = gamma*eps + delta/2 - delta^2/4; the conjugation identity is
    re-verified by exact composition before returning.
    """
    gamma = field.coerce(gamma)
    delta = field.coerce(delta)
    eps = field.coerce(eps)
    if not gamma:
        raise ValueError("leading coefficient must be nonzero")
    two = field.coerce(2)
    four = field.coerce(4)
    kappa = gamma * eps + delta / two - delta * delta / four
    mat = SquareMatrix([[gamma, delta / two], [field.zero, field.one]], field)
    source = RationalMapPN.from_binary_coeffs([gamma, delta, eps],
                                              [field.zero, field.zero, field.one],
                                              field)
    target = RationalMapPN.from_binary_coeffs([field.one, field.zero, kappa],
                                              [field.zero, field.zero, field.one],
                                              field)
    if conjugate(source, mat) != target:
        raise ArithmeticError("completing the square failed exact verification")
    return mat, kappa
