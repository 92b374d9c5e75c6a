"""Exact square matrices over any supported field.

Determinants and inverses use plain Gaussian elimination with exact field
arithmetic — matrices here are tiny ((n+1) x (n+1) conjugations and Macaulay
matrices up to ~36 x 36), so fraction growth is a non-issue.
"""

from __future__ import annotations

from ..errors import SingularMatrixError
from .fields import QQ

__all__ = ["SquareMatrix", "kernel_basis"]


class SquareMatrix:
    """Immutable n x n matrix over a field descriptor."""

    __slots__ = ("rows", "field", "_det")

    def __init__(self, rows, field=QQ):
        rows = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_det", None)

    def __setattr__(self, *a):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[field.one if i == j else field.zero for j in range(n)]
                    for i in range(n)], field)

    @classmethod
    def diagonal(cls, entries, field=QQ):
        n = len(entries)
        return cls([[field.coerce(entries[i]) if i == j else field.zero
                     for j in range(n)] for i in range(n)], field)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.rows == other.rows and self.field == other.field

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            n = self.n
            z = self.field.zero
            return SquareMatrix(
                [[sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), z)
                  for j in range(n)] for i in range(n)], self.field)
        if isinstance(other, (list, tuple)):
            n = self.n
            z = self.field.zero
            vec = [self.field.coerce(v) for v in other]
            return tuple(sum((self.rows[i][k] * vec[k] for k in range(n)), z)
                         for i in range(n))
        return NotImplemented

    def scale(self, s) -> "SquareMatrix":
        s = self.field.coerce(s)
        return SquareMatrix([[v * s for v in row] for row in self.rows], self.field)

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(list(zip(*self.rows)), self.field)

    def det(self):
        if self._det is not None:
            return self._det
        n = self.n
        mat = [list(row) for row in self.rows]
        det = self.field.one
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if mat[r][col]:
                    pivot = r
                    break
            if pivot is None:
                det = self.field.zero
                break
            if pivot != col:
                mat[col], mat[pivot] = mat[pivot], mat[col]
                det = -det
            pv = mat[col][col]
            det = det * pv
            inv = self.field.one / pv
            for r in range(col + 1, n):
                if mat[r][col]:
                    factor = mat[r][col] * inv
                    for c2 in range(col, n):
                        mat[r][c2] = mat[r][c2] - factor * mat[col][c2]
        object.__setattr__(self, "_det", det)
        return det

    def is_invertible(self) -> bool:
        return bool(self.det())

    def inverse(self) -> "SquareMatrix":
        n = self.n
        f = self.field
        mat = [list(row) + [f.one if i == j else f.zero for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if mat[r][col]:
                    pivot = r
                    break
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            mat[col], mat[pivot] = mat[pivot], mat[col]
            inv = f.one / mat[col][col]
            mat[col] = [v * inv for v in mat[col]]
            for r in range(n):
                if r != col and mat[r][col]:
                    factor = mat[r][col]
                    mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
        return SquareMatrix([row[n:] for row in mat], f)

    def adjugate(self) -> "SquareMatrix":
        """det(A) * A^{-1}, computed without division for 2x2, else via inverse."""
        n = self.n
        if n == 2:
            (a, b), (c, d) = self.rows
            return SquareMatrix([[d, -b], [-c, a]], self.field)
        d = self.det()
        if not d:
            raise SingularMatrixError("adjugate via inverse needs det != 0")
        return self.inverse().scale(d)

    def map_entries(self, fn, field=None) -> "SquareMatrix":
        return SquareMatrix([[fn(v) for v in row] for row in self.rows],
                            field or self.field)

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in row) for row in self.rows)
        return f"[{body}]"


def kernel_basis(rows, field=QQ):
    """Basis of the right kernel of a (possibly rectangular) matrix."""
    rows = [[field.coerce(v) for v in row] for row in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for rr in range(r, len(mat)):
            if mat[rr][col]:
                pivot = rr
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.one / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for rr in range(len(mat)):
            if rr != r and mat[rr][col]:
                factor = mat[rr][col]
                mat[rr] = [a - factor * b for a, b in zip(mat[rr], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -mat[prow][fc]
        basis.append(vec)
    return basis
