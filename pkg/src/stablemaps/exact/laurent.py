"""Laurent polynomials over Q and Birkhoff factorization of Laurent matrices.

A transition matrix on the two-chart cover of P^1 is an invertible matrix T
over Q[c, 1/c] (det a nonzero scalar times a power of c).  Birkhoff
factorization writes T = L . diag(c^k_i) . R with L invertible over Q[c]
(constant nonzero determinant) and R invertible over Q[1/c]; the exponent
multiset is the splitting type of the glued bundle.

The factorization here is the constructive one: find a section pair
(u, w) with u(c) = c^k . T . w(1/c), u polynomial in c and w polynomial in
1/c, at the minimal k (a finite exact linear-algebra search); complete u
and w to unimodular matrices over their rings; split off the resulting
c^(-k) pivot and recurse.  Off-diagonal entries then clear unconditionally
because the diagonal exponents come out non-increasing.  Witnesses (L, R)
are returned and re-verified by callers.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotACocycleError
from .fields import QQ, format_rational, parse_rational
from .matrix import kernel_basis
from .ratfunc import RatFunc
from .unipoly import UniPoly

__all__ = ["LaurentPoly", "LaurentMatrix", "birkhoff_factorization"]


class LaurentPoly:
    """Sparse exact Laurent polynomial in one variable over Q."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "c"):
        clean = {}
        for e, v in dict(terms or {}).items():
            v = QQ.coerce(v)
            if v:
                clean[int(e)] = v
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls, var="c"):
        return cls({}, var)

    @classmethod
    def one(cls, var="c"):
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, e: int, v=1, var="c"):
        return cls({e: v}, var)

    @classmethod
    def from_unipoly(cls, p: UniPoly):
        return cls({k: c for k, c in enumerate(p.coeffs)}, p.var)

    @classmethod
    def from_ratfunc(cls, r: RatFunc):
        """Convert a rational function whose denominator is a power of c."""
        den = r.den
        k = 0
        x = UniPoly.x(QQ, r.var)
        while den.degree > 0:
            q, rem = divmod(den, x)
            if not rem.is_zero():
                raise ValueError(f"{r} is not a Laurent polynomial")
            den = q
            k += 1
        scale = den[0]
        return cls({j - k: c / scale for j, c in enumerate(r.num.coeffs)}, r.var)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def val(self) -> int:
        """Minimal exponent (order at c = 0)."""
        if not self.terms:
            raise ValueError("valuation of zero Laurent polynomial")
        return min(self.terms)

    def deg(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero Laurent polynomial")
        return max(self.terms)

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(e, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, str)):
            return LaurentPoly({0: QQ.coerce(other)}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + v
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + v1 * v2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by c^k."""
        return LaurentPoly({e + k: v for e, v in self.terms.items()}, self.var)

    def substitute_power(self, l: int) -> "LaurentPoly":
        """c -> c^l."""
        if l < 1:
            raise ValueError("substitution exponent must be >= 1")
        return LaurentPoly({e * l: v for e, v in self.terms.items()}, self.var)

    def eval(self, x: Fraction) -> Fraction:
        x = QQ.coerce(x)
        if not x and self.terms and self.val() < 0:
            raise ZeroDivisionError("pole at 0")
        return sum((v * x**e for e, v in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_ratfunc(self) -> RatFunc:
        if not self.terms:
            return RatFunc(UniPoly.zero(QQ, self.var))
        shift = min(0, self.val())
        num = UniPoly([self.coeff(e + shift) for e in range(self.deg() - shift + 1)],
                      QQ, self.var)
        den = UniPoly.monomial(-shift, 1, QQ, self.var)
        return RatFunc(num, den)

    def nonneg_part_unipoly(self, var=None) -> UniPoly:
        if self.terms and self.val() < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        size = self.deg() + 1 if self.terms else 0
        return UniPoly([self.coeff(e) for e in range(size)], QQ, var or self.var)

    def nonpos_part_unipoly(self, var: str) -> UniPoly:
        """As a polynomial in 1/c (exponent e becomes degree -e)."""
        if self.terms and self.deg() > 0:
            raise ValueError("Laurent polynomial has positive exponents")
        size = -self.val() + 1 if self.terms else 0
        return UniPoly([self.coeff(-e) for e in range(size)], QQ, var)

    def serialize(self):
        return {str(e): format_rational(v) for e, v in sorted(self.terms.items())}

    @classmethod
    def parse(cls, data, var="c"):
        return cls({int(e): parse_rational(v) for e, v in data.items()}, var)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            v = self.terms[e]
            if e == 0:
                parts.append(f"{format_rational(v)}")
            else:
                head = "" if v == 1 else f"{format_rational(v)}*"
                parts.append(f"{head}{self.var}^{e}" if e != 1 else f"{head}{self.var}")
        return " + ".join(parts).replace("+ -", "- ")


class LaurentMatrix:
    """Square matrix with LaurentPoly entries."""

    __slots__ = ("rows", "var")

    def __init__(self, rows, var="c"):
        conv = []
        for row in rows:
            conv.append(tuple(v if isinstance(v, LaurentPoly)
                              else LaurentPoly({0: v}, var) for v in row))
        n = len(conv)
        if any(len(r) != n for r in conv):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", tuple(conv))
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def identity(cls, n, var="c"):
        one, zero = LaurentPoly.one(var), LaurentPoly.zero(var)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], var)

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __mul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        n = self.n
        zero = LaurentPoly.zero(self.var)
        return LaurentMatrix(
            [[sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), zero)
              for j in range(n)] for i in range(n)], self.var)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.rows == other.rows

    def mul_vector(self, vec):
        n = self.n
        zero = LaurentPoly.zero(self.var)
        return [sum((self.rows[i][k] * vec[k] for k in range(n)), zero) for i in range(n)]

    def det(self) -> LaurentPoly:
        n = self.n
        if n == 1:
            return self.rows[0][0]
        zero = LaurentPoly.zero(self.var)
        total = zero
        for j in range(n):
            if not self.rows[0][j]:
                continue
            minor = LaurentMatrix(
                [[self.rows[i][k] for k in range(n) if k != j] for i in range(1, n)],
                self.var)
            term = self.rows[0][j] * minor.det()
            total = total + term if j % 2 == 0 else total - term
        return total

    def adjugate(self) -> "LaurentMatrix":
        n = self.n
        if n == 1:
            return LaurentMatrix([[LaurentPoly.one(self.var)]], self.var)
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = LaurentMatrix(
                    [[self.rows[r][k] for k in range(n) if k != j]
                     for r in range(n) if r != i], self.var)
                m = minor.det()
                row.append(m if (i + j) % 2 == 0 else -m)
            cof.append(row)
        return LaurentMatrix(cof, self.var).transpose()

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(list(zip(*self.rows)), self.var)

    def scale(self, s: LaurentPoly) -> "LaurentMatrix":
        return LaurentMatrix([[v * s for v in row] for row in self.rows], self.var)

    def substitute_power(self, l: int) -> "LaurentMatrix":
        return LaurentMatrix([[v.substitute_power(l) for v in row] for row in self.rows],
                             self.var)

    def is_polynomial_in_c(self) -> bool:
        return all(v.is_zero() or v.val() >= 0 for row in self.rows for v in row)

    def is_polynomial_in_inv_c(self) -> bool:
        return all(v.is_zero() or v.deg() <= 0 for row in self.rows for v in row)

    def unit_det(self):
        """(scalar, exponent) if det = scalar * c^exponent, else None."""
        d = self.det()
        if d.is_monomial():
            e = d.val()
            return d.coeff(e), e
        return None

    def inverse_unimodular(self) -> "LaurentMatrix":
        """Inverse of a matrix whose determinant is a unit of Q[c, 1/c]."""
        unit = self.unit_det()
        if unit is None:
            raise NotACocycleError("matrix determinant is not a unit")
        scalar, e = unit
        inv_det = LaurentPoly.monomial(-e, Fraction(1) / scalar, self.var)
        return self.adjugate().scale(inv_det)

    def serialize(self):
        return [[v.serialize() for v in row] for row in self.rows]

    @classmethod
    def parse(cls, data, var="c"):
        return cls([[LaurentPoly.parse(v, var) for v in row] for row in data], var)

    def __repr__(self):
        return "[" + "; ".join(", ".join(str(v) for v in row) for row in self.rows) + "]"


def _exponent_range(m: LaurentMatrix):
    lo, hi = None, None
    for row in m.rows:
        for v in row:
            if v:
                lo = v.val() if lo is None else min(lo, v.val())
                hi = v.deg() if hi is None else max(hi, v.deg())
    if lo is None:
        raise NotACocycleError("zero matrix is not a cocycle")
    return lo, hi


def _sections_at(m: LaurentMatrix, k: int, bound: int):
    """Kernel description of { w in Q[1/c]^n, deg <= bound : c^k M w in Q[c]^n }.

    Unknowns are the tau-coefficients w[l][j]; returns (basis, to_pair) where
    to_pair maps a kernel vector to the exact (u, w) Laurent vectors.
    """
    n = m.n
    lo, _hi = _exponent_range(m)
    ncols = n * (bound + 1)
    rows = []
    # coefficient of c^e in (c^k M w)_i is sum_l sum_j M[i][l].coeff(e - k + j) w[l][j]
    for i in range(n):
        for e in range(k + lo - bound, 0):
            row = [Fraction(0)] * ncols
            nonzero = False
            for l in range(n):
                entry = m.rows[i][l]
                for j in range(bound + 1):
                    coef = entry.coeff(e - k + j)
                    if coef:
                        row[l * (bound + 1) + j] += coef
                        nonzero = True
            if nonzero:
                rows.append(row)
    basis = kernel_basis(rows, QQ) if rows else \
        [[Fraction(1) if t == s else Fraction(0) for t in range(ncols)] for s in range(ncols)]

    def to_pair(vec):
        w = [LaurentPoly({-j: vec[l * (bound + 1) + j] for j in range(bound + 1)}, m.var)
             for l in range(n)]
        u = [entry.shift(k) for entry in m.mul_vector(w)]
        return u, w

    return basis, to_pair


def _complete_unimodular_poly(column: list[UniPoly]) -> list[list[UniPoly]]:
    """Square unimodular (constant nonzero det) matrix over F[x] with the given
    primitive first column."""
    n = len(column)
    field = column[0].field
    var = column[0].var
    one = UniPoly.one(field, var)
    zero = UniPoly.zero(field, var)
    vinv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    vec = list(column)
    for i in range(1, n):
        if vec[i].is_zero():
            continue
        if vec[0].is_zero():
            # swap positions 0 and i
            vec[0], vec[i] = vec[i], vec[0]
            for r in range(n):
                vinv[r][0], vinv[r][i] = vinv[r][i], vinv[r][0]
            continue
        g, s, t = vec[0].ext_gcd(vec[i])
        p0g, pig = vec[0].exact_div(g), vec[i].exact_div(g)
        # inverse elementary block [[p0/g, -t], [pi/g, s]] acting on columns 0, i
        for r in range(n):
            a, b = vinv[r][0], vinv[r][i]
            vinv[r][0] = a * p0g + b * pig
            vinv[r][i] = -a * t + b * s
        vec[0], vec[i] = g, zero
    g = vec[0]
    if g.degree != 0:
        raise ArithmeticError("section column is not primitive")
    for r in range(n):
        vinv[r][0] = vinv[r][0] * g
    return vinv


def _poly_vec_from_laurent(vs, negate_exponents: bool, var: str) -> list[UniPoly]:
    if negate_exponents:
        return [v.nonpos_part_unipoly(var) for v in vs]
    return [v.nonneg_part_unipoly(var) for v in vs]


def _laurent_from_poly_matrix(rows, negate_exponents: bool, var: str) -> LaurentMatrix:
    out = []
    for row in rows:
        new = []
        for p in row:
            if negate_exponents:
                new.append(LaurentPoly({-k: c for k, c in enumerate(p.coeffs)}, var))
            else:
                new.append(LaurentPoly({k: c for k, c in enumerate(p.coeffs)}, var))
        out.append(new)
    return LaurentMatrix(out, var)


def _find_top_section(m: LaurentMatrix):
    """Minimal k and a section pair (u, w) with u = c^k M w, both primitive."""
    lo, hi = _exponent_range(m)
    bound = m.n * (hi - lo) + 2
    for k in range(-hi, -lo + 1):
        basis, to_pair = _sections_at(m, k, bound)
        if not basis:
            continue
        # need a kernel vector whose u is nonzero at c=0 and w nonzero at tau=0
        candidates = list(basis)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                candidates.append([a + b for a, b in zip(basis[i], basis[j])])
                candidates.append([a + 2 * b for a, b in zip(basis[i], basis[j])])
        for vec in candidates:
            u, w = to_pair(vec)
            if all(x.is_zero() for x in w):
                continue
            u_ok = any(x.coeff(0) for x in u)
            w_ok = any(x.coeff(0) for x in w)
            if not (u_ok and w_ok):
                continue
            # content check for u over Q[c]
            upolys = _poly_vec_from_laurent(u, False, m.var)
            g = UniPoly.zero(QQ, m.var)
            for p in upolys:
                g = p.gcd(g) if not g.is_zero() else p.monic() if not p.is_zero() else g
            if not g.is_zero() and g.degree > 0:
                continue
            wpolys = _poly_vec_from_laurent(w, True, "_tau")
            gw = UniPoly.zero(QQ, "_tau")
            for p in wpolys:
                gw = p.gcd(gw) if not gw.is_zero() else p.monic() if not p.is_zero() else gw
            if not gw.is_zero() and gw.degree > 0:
                continue
            return k, u, w
    raise NotACocycleError("no section pair found; matrix is not an invertible cocycle")


def birkhoff_factorization(m: LaurentMatrix):
    """Return (L, exponents, R) with m = L . diag(c^e) . R, exponents
    non-increasing, L unimodular over Q[c], R unimodular over Q[1/c]."""
    if m.unit_det() is None:
        raise NotACocycleError(f"det {m.det()} is not a unit of the Laurent ring")
    n = m.n
    var = m.var
    if n == 1:
        entry = m.rows[0][0]
        if not entry.is_monomial():
            raise NotACocycleError("1x1 cocycle entry must be a monomial")
        e = entry.val()
        L = LaurentMatrix([[LaurentPoly({0: entry.coeff(e)}, var)]], var)
        R = LaurentMatrix.identity(1, var)
        return L, [e], R

    k, u, w = _find_top_section(m)
    m1 = -k

    upolys = _poly_vec_from_laurent(u, False, var)
    l1_rows = _complete_unimodular_poly(upolys)
    L1 = _laurent_from_poly_matrix(l1_rows, False, var)
    wpolys = _poly_vec_from_laurent(w, True, "_tau")
    w_rows = _complete_unimodular_poly(wpolys)
    W = _laurent_from_poly_matrix(w_rows, True, var)

    M2 = L1.inverse_unimodular() * m * W
    # first column must now be c^(m1) e_1
    assert M2[0, 0] == LaurentPoly.monomial(m1, 1, var)
    assert all(M2[i, 0].is_zero() for i in range(1, n))

    sub = LaurentMatrix([[M2[i, j] for j in range(1, n)] for i in range(1, n)], var)
    L2, exps2, R2 = birkhoff_factorization(sub)

    def embed(block):
        one, zero = LaurentPoly.one(var), LaurentPoly.zero(var)
        rows = [[one] + [zero] * (n - 1)]
        for i in range(n - 1):
            rows.append([zero] + [block[i, j] for j in range(n - 1)])
        return LaurentMatrix(rows, var)

    L2e, R2e = embed(L2), embed(R2)
    mid = L2e.inverse_unimodular() * M2 * R2e.inverse_unimodular()
    # mid = [[c^m1, gamma], [0, diag(c^exps2)]]
    exps = [m1] + exps2
    f_entries = [LaurentPoly.zero(var)] * n
    g_entries = [LaurentPoly.zero(var)] * n
    for j in range(1, n):
        gamma = mid[0, j]
        kj = exps[j]
        hi_part = LaurentPoly({e: v for e, v in gamma.terms.items() if e >= kj}, var)
        lo_part = gamma - hi_part
        if lo_part and lo_part.deg() > m1:
            raise ArithmeticError("off-diagonal exponent gap; factorization failed")
        f_entries[j] = hi_part.shift(-kj)
        g_entries[j] = lo_part.shift(-m1)

    def elem_row(entries):
        base = LaurentMatrix.identity(n, var)
        rows = [list(r) for r in base.rows]
        for j in range(1, n):
            rows[0][j] = entries[j]
        return LaurentMatrix(rows, var)

    E_f = elem_row(f_entries)   # polynomial in c
    E_g = elem_row(g_entries)   # polynomial in 1/c
    L = L1 * L2e * E_f
    R = E_g * R2e * W.inverse_unimodular()
    return L, exps, R
