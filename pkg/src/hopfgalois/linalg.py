"""Exact linear algebra: Gaussian elimination over Q (or any exact field),
fraction-free integer determinants, and the row Hermite normal form."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        ai = a[i]
        row = []
        for j in range(cols):
            acc = ai[0] * b[0][j]
            for k in range(1, inner):
                acc = acc + ai[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(mat):
    """Reduced row echelon form.  Returns (rows, pivot_columns); the input is
    not modified.  Works over any exact field (truthiness means nonzero)."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def kernel_basis(mat, ncols: int):
    """Canonical basis of {v : mat @ v = 0}, one vector per free column of the
    reduced echelon form, ordered by free-column index."""
    if not mat:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis


def invert(mat):
    """Inverse of a square matrix over an exact field; None if singular."""
    n = len(mat)
    aug = [list(mat[i]) + identity_matrix(n)[i] for i in range(n)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows]


def det(mat):
    """Determinant over an exact field by Gaussian elimination."""
    n = len(mat)
    m = [list(r) for r in mat]
    zero = mat[0][0] - mat[0][0]
    sign = 1
    pivots = []
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        pivots.append(piv)
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    acc = pivots[0]
    for p in pivots[1:]:
        acc = acc * p
    return -acc if sign < 0 else acc


def int_det(mat) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pkk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (x, y, g) with x*a + y*b == g >= 0 for b != 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _leading(row) -> int:
    for j, v in enumerate(row):
        if v:
            return j
    return -1


def hnf(mat) -> list[list[int]]:
    """Canonical row Hermite normal form of an integer matrix: zero rows are
    dropped, pivots are positive, entries above a pivot lie in [0, pivot)."""
    pivot_row: dict[int, list[int]] = {}
    for vec in mat:
        vec = list(vec)
        while True:
            j = _leading(vec)
            if j < 0:
                break
            row = pivot_row.get(j)
            if row is None:
                pivot_row[j] = vec
                break
            # both vectors lead at column j, so combining keeps zeros left of j
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, len(vec)):
                    vec[k] -= q * row[k]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(j, len(vec)):
                    rk, vk = row[k], vec[k]
                    row[k] = x * rk + y * vk
                    vec[k] = ag * vk - bg * rk
    basis = [pivot_row[j] for j in sorted(pivot_row)]
    for row in basis:
        if row[_leading(row)] < 0:
            for k in range(len(row)):
                row[k] = -row[k]
    # reduce above-pivot entries left to right so later passes cannot
    # re-inflate columns already reduced
    for i in range(1, len(basis)):
        j = _leading(basis[i])
        p = basis[i][j]
        for r in basis[:i]:
            q = r[j] // p
            if q:
                for k in range(j, len(r)):
                    r[k] -= q * basis[i][k]
    return basis


class LinearSolver:
    """Repeated exact solves of ``columns @ c = target`` for a fixed full
    column rank family of columns."""

    def __init__(self, columns):
        self.ncols = len(columns)
        self.nrows = len(columns[0])
        aug = [[columns[j][i] for j in range(self.ncols)] + identity_matrix(self.nrows)[i]
               for i in range(self.nrows)]
        rows, pivots = rref(aug)
        if pivots[: self.ncols] != list(range(self.ncols)):
            raise ValueError("columns are linearly dependent")
        self._transform = [row[self.ncols:] for row in rows]

    def solve(self, target):
        """Coordinates of target in the column family, or None if target is
        outside their span."""
        y = mat_vec(self._transform, target)
        coords = y[: self.ncols]
        for extra in y[self.ncols:]:
            if extra:
                return None
        return coords
