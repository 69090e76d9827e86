"""Exact rank, determinants and kernels.

Rank over GF(p) goes through the compiled kernel; over QQ rows are cleared to
integers and reduced fraction-free (Bareiss), which keeps every intermediate
entry a minor of the input.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .field import Field


def rank(matrix: Sequence[Sequence], K: Field) -> int:
    if not matrix or not matrix[0]:
        return 0
    if K.characteristic:
        return kernels.rank_mod_p(matrix, K.characteristic)
    return bareiss_rank(_integer_rows(matrix))


def _integer_rows(matrix):
    rows = []
    for row in matrix:
        den = lcm(*(Fraction(v).denominator for v in row))
        rows.append([int(Fraction(v) * den) for v in row])
    return rows


def bareiss_rank(m: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (the input is consumed)."""
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            row_r = m[r]
            for j in range(c + 1, ncols):
                mi[j] = (p * mi[j] - f * row_r[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def det(matrix: Sequence[Sequence], ring) -> object:
    """Determinant over an integral domain by Bareiss elimination.

    ``ring`` supplies ``zero, one, is_zero, sub, mul, neg, exact_div``; a
    :class:`~planeproj.field.Field` or a :class:`~planeproj.upoly.PolyRing` both qualify.
    """
    n = len(matrix)
    if n == 0:
        return ring.one
    m = [list(row) for row in matrix]
    sign = False
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not ring.is_zero(m[i][k])), None)
            if swap is None:
                return ring.zero
            m[k], m[swap] = m[swap], m[k]
            sign = not sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(pk, m[i][j]), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.exact_div(num, prev)
        prev = pk
    out = m[n - 1][n - 1]
    return ring.neg(out) if sign else out


def rref(matrix: Sequence[Sequence], K: Field) -> tuple[list[list], list[int]]:
    m = [[K(v) for v in row] for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = K.inv(m[r][c])
        m[r] = [K.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(matrix: Sequence[Sequence], K: Field, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : matrix v = 0}``."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[K.one if i == j else K.zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    m, pivots = rref(matrix, K)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [K.zero] * ncols
        v[f] = K.one
        for r, pc in enumerate(pivots):
            v[pc] = K.neg(m[r][f])
        basis.append(v)
    return basis


def mat_mul(K: Field, A, B):
    return [[_dot(K, row, col) for col in zip(*B)] for row in A]


def mat_vec(K: Field, A, v):
    return tuple(_dot(K, row, v) for row in A)


def _dot(K, a, b):
    acc = K.zero
    for x, y in zip(a, b):
        acc = K.add(acc, K.mul(x, y))
    return acc


def inverse3(K: Field, M):
    """Inverse of an invertible 3x3 matrix."""
    m, _ = rref([list(row) + [K.one if i == j else K.zero for j in range(3)] for i, row in enumerate(M)], K)
    if any(m[i][i] != K.one for i in range(3)):
        raise ZeroDivisionError("singular matrix")
    return [row[3:] for row in m]
