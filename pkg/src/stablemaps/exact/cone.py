"""Exact linear feasibility of weight-vector cones.

The stability theory asks two questions about a finite set V of integer
vectors in Z^(n+1):

* is there a vector a with sum(a) = 0 and a.v > 0 for every v in V
  (:func:`strict_cone_feasible`), and
* is there a nonzero a with sum(a) = 0 and a.v >= 0 for every v
  (:func:`nonneg_cone_feasible`)?

Both are answered by a small two-phase simplex over Fractions with Bland's
rule — no floating point anywhere.  Strict inequalities are handled by
maximizing a uniform slack over the box -1 <= a_i <= 1; a positive optimum
certifies feasibility and the optimizer itself is returned, scaled to a
coprime integer vector.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = ["strict_cone_feasible", "nonneg_cone_feasible", "simplex_min"]


def simplex_min(A, b, c):
    """Minimize c.x subject to A x = b, x >= 0 (all Fractions).

    Returns (status, value, x) with status in {"optimal", "infeasible"}.
    The feasible regions used in this module are bounded, so the unbounded
    case is reported as an error.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # phase 1 tableau: columns = original vars + artificials
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
         for i in range(m)]
    basis = list(range(n, n + m))
    total = n + m

    def run(cost, active):
        # price the cost row against the current basis; entering columns are
        # restricted to the first `active` columns (phase 2 bars artificials)
        r = [Fraction(v) for v in cost] + [Fraction(0)]
        obj = Fraction(0)
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb:
                for j in range(total):
                    r[j] -= cb * T[i][j]
                obj -= cb * T[i][total]
        while True:
            enter = next((j for j in range(active) if r[j] < 0), None)
            if enter is None:
                return -obj
            best = None
            for i in range(len(T)):
                if T[i][enter] > 0:
                    ratio = T[i][total] / T[i][enter]
                    if best is None or ratio < best[0] or \
                            (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise ArithmeticError("unbounded linear program in cone test")
            _, row = best
            piv = T[row][enter]
            T[row] = [v / piv for v in T[row]]
            for i in range(len(T)):
                if i != row and T[i][enter]:
                    f = T[i][enter]
                    T[i] = [a - f * p for a, p in zip(T[i], T[row])]
            if r[enter]:
                f = r[enter]
                for j in range(total):
                    r[j] -= f * T[row][j]
                obj -= f * T[row][total]
            basis[row] = enter

    phase1_cost = [Fraction(0)] * n + [Fraction(1)] * m
    if run(phase1_cost, total) > 0:
        return "infeasible", None, None
    # drive leftover artificials out of the basis; drop redundant rows
    for i in range(len(T) - 1, -1, -1):
        if basis[i] >= n:
            piv_col = next((j for j in range(n) if T[i][j]), None)
            if piv_col is None:
                del T[i]
                del basis[i]
                continue
            piv = T[i][piv_col]
            T[i] = [v / piv for v in T[i]]
            for k in range(len(T)):
                if k != i and T[k][piv_col]:
                    f = T[k][piv_col]
                    T[k] = [a - f * p for a, p in zip(T[k], T[i])]
            basis[i] = piv_col

    phase2_cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    value = run(phase2_cost, n)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][total]
    return "optimal", value, x


def _to_integer_vector(a):
    den = 1
    for v in a:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    return tuple(ints)


def _build_rows(vectors, with_t: bool):
    """Rows for: u_i + s_i = 2, sum(u) = N, v.u - [t] - w_k = sum(v)."""
    N = len(vectors[0])
    K = len(vectors)
    t_cols = 1 if with_t else 0
    ncols = N + N + t_cols + K
    A, b = [], []
    for i in range(N):
        row = [Fraction(0)] * ncols
        row[i] = Fraction(1)
        row[N + i] = Fraction(1)
        A.append(row)
        b.append(Fraction(2))
    row = [Fraction(0)] * ncols
    for i in range(N):
        row[i] = Fraction(1)
    A.append(row)
    b.append(Fraction(N))
    for k, v in enumerate(vectors):
        row = [Fraction(0)] * ncols
        for i in range(N):
            row[i] = Fraction(v[i])
        if with_t:
            row[2 * N] = Fraction(-1)
        row[2 * N + t_cols + k] = Fraction(-1)
        A.append(row)
        b.append(Fraction(sum(v)))
    return A, b, ncols, N


def strict_cone_feasible(vectors):
    """A coprime integer vector a with sum(a)=0 and a.v > 0 for all v, or None."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise ValueError("empty vector list")
    N = len(vectors[0])
    if any(len(v) != N for v in vectors):
        raise ValueError("vectors of mixed dimension")
    A, b, ncols, N = _build_rows(vectors, with_t=True)
    cost = [Fraction(0)] * ncols
    cost[2 * N] = Fraction(-1)  # maximize t
    status, value, x = simplex_min(A, b, cost)
    if status != "optimal" or -value <= 0:
        return None
    a = [x[i] - 1 for i in range(N)]
    a_int = _to_integer_vector(a)
    assert sum(a_int) == 0 and any(a_int)
    assert all(sum(ai * vi for ai, vi in zip(a_int, v)) > 0 for v in vectors)
    return a_int


def nonneg_cone_feasible(vectors):
    """A nonzero coprime integer a with sum(a)=0 and a.v >= 0 for all v, or None."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise ValueError("empty vector list")
    N = len(vectors[0])
    A, b, ncols, _ = _build_rows(vectors, with_t=False)
    for i in range(N):
        for sign in (1, -1):
            cost = [Fraction(0)] * ncols
            cost[i] = Fraction(-sign)  # maximize sign * u_i, i.e. sign * (a_i + 1)
            status, value, x = simplex_min(A, b, cost)
            if status != "optimal":
                continue
            if sign * (x[i] - 1) > 0:
                a = [x[j] - 1 for j in range(N)]
                a_int = _to_integer_vector(a)
                assert sum(a_int) == 0 and any(a_int)
                assert all(sum(ai * vi for ai, vi in zip(a_int, v)) >= 0 for v in vectors)
                return a_int
    return None
