"""Exact rational linear algebra on tuples of :class:`fractions.Fraction`.

Matrices are tuples of row tuples, vectors are tuples.  Nothing here ever
touches a float, so every sign decision downstream is exact.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import Singular

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

# When set, every solve re-multiplies and checks the residual is exactly zero.
VERIFY = os.environ.get("USOCOUNT_VERIFY") == "1"


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def vector(entries: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def _square(A):
    r, c = shape(A)
    if r != c:
        raise ValueError(f"matrix is not square ({r}x{c})")
    return r


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if shape(A)[1] != shape(B)[0]:
        raise ValueError("shape mismatch")
    cols = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def matvec(A: Matrix, x: Sequence[Fraction]) -> Vector:
    if shape(A)[1] != len(x):
        raise ValueError("shape mismatch")
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def neg(A: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in A)


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def determinant(A: Matrix) -> Fraction:
    """Bareiss fraction-free elimination with row pivoting."""
    n = _square(A)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in A]
    s = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    s = -s
                    break
            else:
                return Fraction(0)
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pkk - mik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pkk
    return s * m[n - 1][n - 1]


def solve(A: Matrix, b: Sequence[Fraction]) -> Vector:
    """Exact ``x`` with ``A x = b`` (Gaussian elimination with row pivoting)."""
    n = _square(A)
    if len(b) != n:
        raise ValueError("shape mismatch")
    m = [list(row) + [Fraction(b[i])] for i, row in enumerate(A)]
    for k in range(n):
        p = next((r for r in range(k, n) if m[r][k] != 0), None)
        if p is None:
            raise Singular("matrix is singular")
        if p != k:
            m[k], m[p] = m[p], m[k]
        row_k = m[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            f = m[i][k]
            if f:
                f /= pivot
                row_i = m[i]
                for j in range(k, n + 1):
                    row_i[j] -= f * row_k[j]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        acc = row[n]
        for j in range(i + 1, n):
            acc -= row[j] * x[j]
        x[i] = acc / row[i]
    x = tuple(x)
    if VERIFY and matvec(A, x) != tuple(Fraction(v) for v in b):
        raise AssertionError("nonzero residual in exact solve")
    return x


def inverse(A: Matrix) -> Matrix:
    n = _square(A)
    cols = [solve(A, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(tuple(cols))


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Submatrix on 0-based ``rows`` and ``cols``."""
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def principal_minor(A: Matrix, S: Iterable[int]) -> Fraction:
    """Determinant of the principal submatrix on the 1-based index set ``S``."""
    n = _square(A)
    idx = sorted(set(S))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > n:
        raise ValueError(f"index set {idx} outside [1, {n}]")
    z = [i - 1 for i in idx]
    return determinant(submatrix(A, z, z))


def principal_minors(A: Matrix):
    """Yield ``(S, minor)`` for all ``2**n - 1`` nonempty 1-based index sets."""
    n = _square(A)
    for k in range(1, n + 1):
        for S in combinations(range(1, n + 1), k):
            yield S, principal_minor(A, S)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
