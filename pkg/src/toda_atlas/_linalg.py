"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are anything that behaves like a
field element (``Fraction``, ``int``, ``GaussRat``).  Sizes here never
exceed a few dozen, so plain Gauss-Jordan is the right tool.
"""

from __future__ import annotations

from fractions import Fraction


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * m
        for k, x in enumerate(row):
            if x == 0:
                continue
            bk = b[k]
            for j in range(m):
                if bk[j] != 0:
                    acc[j] += x * bk[j]
        out.append(acc)
    return out


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        inv = Fraction(1, p) if isinstance(p, int) else 1 / p
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows):
    return len(rref(rows)[1])


def inverse(rows):
    n = len(rows)
    aug = [list(map(Fraction, row)) + e for row, e in zip(rows, identity(n))]
    red, piv = rref(aug, ncols=n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def nullspace(rows, ncols):
    """Basis of the right null space, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis
