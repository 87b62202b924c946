"""Exact lattice linear algebra: column Hermite form, determinants,
rational inverses, and sublattice intersection.

Matrices are lists of rows with Python int (or Fraction) entries; a lattice
is the set of integer combinations of the *columns* of its basis matrix.
Everything here is exact — no floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(mat):
    return [list(row) for row in zip(*mat)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hnf_columns(mat: list[list[int]]) -> list[list[int]]:
    """Column Hermite normal form of an integer matrix with full row rank.

    Returns the unique n x n lower-triangular basis of the column lattice
    with positive diagonal and, within each row, the entries left of the
    diagonal reduced into [0, diagonal).  Input may have extra columns
    (n x m, m >= n); they are absorbed into the lattice.
    """
    n = len(mat)
    work = [list(col) for col in zip(*mat)]  # columns
    if len(work) < n:
        raise ValueError("fewer columns than rows")
    for i in range(n):
        piv = next((k for k in range(i, len(work)) if work[k][i] != 0), None)
        if piv is None:
            raise ValueError("matrix does not have full row rank")
        work[i], work[piv] = work[piv], work[i]
        for k in range(i + 1, len(work)):
            while work[k][i] != 0:
                q = work[i][i] // work[k][i]
                work[i] = [a - q * b for a, b in zip(work[i], work[k])]
                work[i], work[k] = work[k], work[i]
        if work[i][i] < 0:
            work[i] = [-a for a in work[i]]
        for k in range(i):
            q = work[k][i] // work[i][i]
            if q:
                work[k] = [a - q * b for a, b in zip(work[k], work[i])]
    return [[work[j][i] for j in range(n)] for i in range(n)]


def det_bareiss(mat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
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


def invert_rational(mat) -> list[list[Fraction]]:
    """Inverse via Gauss-Jordan over Fraction; raises on singular input."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _denominator_lcm(mat) -> int:
    d = 1
    for row in mat:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def hnf_rational(mat) -> list[list[Fraction]]:
    """Column Hermite form of a full-row-rank matrix with Fraction entries.

    Scaling the lattice by the common denominator reduces to the integer
    case; the form scales back linearly.
    """
    s = _denominator_lcm(mat)
    scaled = [[int(Fraction(x) * s) for x in row] for row in mat]
    h = hnf_columns(scaled)
    return [[Fraction(x, s) for x in row] for row in h]


def lattice_intersection(m1: list[list[int]], m2: list[list[int]]) -> list[list[int]]:
    """Basis (column HNF) of the intersection of two full-rank column lattices.

    Uses duality: the dual of an intersection is the sum of the duals, and
    the dual lattice of L(M) has basis M^-T.  Summing means concatenating
    generators; two Hermite reductions and one more dualization land back on
    an integer basis whenever the inputs are integral.
    """
    d1 = transpose(invert_rational(m1))
    d2 = transpose(invert_rational(m2))
    dual_sum = [row1 + row2 for row1, row2 in zip(d1, d2)]
    h = hnf_rational(dual_sum)
    inter = transpose(invert_rational(h))
    result = hnf_rational(inter)
    out = []
    for row in result:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise AssertionError("intersection of integer lattices must be integral")
            int_row.append(int(x))
        out.append(int_row)
    return out


def lattice_contains(basis: list[list[int]], vec: list[int]) -> bool:
    """Is vec an integer combination of the columns of basis?"""
    inv = invert_rational(basis)
    coords = mat_vec(inv, vec)
    return all(c.denominator == 1 for c in coords)


def lattice_equal(b1, b2) -> bool:
    return hnf_columns(b1) == hnf_columns(b2)


def column_style_index(basis: list[list[int]]) -> int:
    """Index of the column lattice inside Z^n: |det|."""
    d = det_bareiss(basis)
    if d == 0:
        raise ValueError("degenerate lattice")
    return abs(d)


def primitive_vector(vec: list[int]) -> list[int]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    return [x // g for x in vec]
