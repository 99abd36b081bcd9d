"""Exact integer and rational linear algebra on small lattices.

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Everything is arbitrary precision and exact; no floating point is used
anywhere in this package.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def as_vector(v) -> Vec:
    return tuple(int(x) for x in v)


def as_matrix(rows) -> Mat:
    m = tuple(as_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows have unequal lengths")
    return m


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(k: int, v: Vec) -> Vec:
    return tuple(k * a for a in v)


def is_zero_vec(v) -> bool:
    return all(a == 0 for a in v)


def transpose(a: Mat) -> Mat:
    if not a:
        return ()
    return tuple(zip(*a))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def mat_vec(a: Mat, v) -> tuple:
    return tuple(dot(r, v) for r in a)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(a: Mat) -> tuple[Mat, Mat]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U*A = H.  Convention: pivots are
    positive, entries above a pivot are reduced into [0, pivot), zero rows
    are collected at the bottom.  This fixed convention makes H unique.
    """
    a = as_matrix(a)
    if not a:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    m, n = len(a), len(a[0])
    h = [list(r) for r in a]
    u = [list(r) for r in identity(m)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if h[r][col]), None)
        if piv is None:
            continue
        if piv != row:
            h[row], h[piv] = h[piv], h[row]
            u[row], u[piv] = u[piv], u[row]
        for r in range(row + 1, m):
            if not h[r][col]:
                continue
            p, q = h[row][col], h[r][col]
            g, x, y = _xgcd(p, q)
            pg, qg = p // g, q // g
            # [[x, y], [-qg, pg]] has determinant 1, so unimodularity survives.
            h[row], h[r] = (
                [x * s + y * t for s, t in zip(h[row], h[r])],
                [-qg * s + pg * t for s, t in zip(h[row], h[r])],
            )
            u[row], u[r] = (
                [x * s + y * t for s, t in zip(u[row], u[r])],
                [-qg * s + pg * t for s, t in zip(u[row], u[r])],
            )
        if h[row][col] < 0:
            h[row] = [-s for s in h[row]]
            u[row] = [-s for s in u[row]]
        p = h[row][col]
        for r in range(row):
            q = h[r][col] // p
            if q:
                h[r] = [s - q * t for s, t in zip(h[r], h[row])]
                u[r] = [s - q * t for s, t in zip(u[r], u[row])]
        row += 1
        if row == m:
            break
    return tuple(tuple(r) for r in h), tuple(tuple(r) for r in u)


def rank(a: Mat) -> int:
    """Rank over the rationals (exact)."""
    a = as_matrix(a)
    if not a or not a[0]:
        return 0
    h, _ = hermite_normal_form(a)
    return sum(1 for r in h if not is_zero_vec(r))


def det(a: Mat) -> int:
    """Determinant of a square integer matrix via Bareiss elimination."""
    a = as_matrix(a)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def primitive(v) -> Vec:
    """Divide a nonzero integer vector by the gcd of its entries."""
    v = as_vector(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def kernel_lattice(a: Mat, ncols: int | None = None) -> list[Vec]:
    """Z-basis of the integer kernel {x : A x = 0}.

    Computed from the Hermite normal form of the transpose: rows of the
    transformation matrix that map to zero rows of H span the kernel.
    An empty matrix is treated as the zero map on Z^ncols.
    """
    a = as_matrix(a)
    if not a:
        if ncols is None:
            raise ValueError("kernel of an empty matrix needs an explicit ncols")
        return list(identity(ncols))
    h, u = hermite_normal_form(transpose(a))
    return [u[i] for i in range(len(h)) if is_zero_vec(h[i])]


def solve_rational(a: Mat, b) -> tuple[Fraction, ...] | None:
    """One exact solution x of A x = b, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    a = as_matrix(a)
    m = len(a)
    n = len(a[0]) if a else 0
    rows = [[Fraction(x) for x in r] + [Fraction(c)] for r, c in zip(a, b, strict=True)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def field_rank(rows) -> int:
    """Rank of a matrix over any exact field (elements support +,-,*,/)."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    m, n = len(mat), len(mat[0])
    rk = 0
    for c in range(n):
        piv = next((i for i in range(rk, m) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        for i in range(rk + 1, m):
            if mat[i][c]:
                f = mat[i][c] / mat[rk][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rk])]
        rk += 1
        if rk == m:
            break
    return rk
