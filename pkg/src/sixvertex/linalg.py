"""Dense determinants and minor tables over mpf (or any ordered field).

Matrices are plain row-major sequences of sequences; nothing here mutates
its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

Matrix = Sequence[Sequence]


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("matrix rows have unequal lengths")
    return rows, cols


def det(m: Matrix):
    """Determinant by LU elimination with partial pivoting.

    Works for mpf and for exact types such as Fraction (where pivoting by
    magnitude is harmless). Integer entries are promoted to Fraction so the
    result stays exact. The empty matrix has determinant 1.
    """
    n, cols = shape(m)
    if n != cols:
        raise ValueError(f"determinant needs a square matrix, got {n}x{cols}")
    if n == 0:
        return 1
    a = [[Fraction(x) if type(x) is int else x for x in row] for row in m]
    result = a[0][0] * 0 + 1
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[piv][k] == 0:
            return a[0][0] * 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        pivot = a[k][k]
        result *= pivot
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f == 0:
                continue
            rowi = a[i]
            for j in range(k + 1, n):
                rowi[j] -= f * rowk[j]
    return result


def delete_rows(m: Matrix, rows: Sequence[int]) -> list[list]:
    """Copy of ``m`` without the given 0-based rows."""
    skip = set(rows)
    return [list(r) for i, r in enumerate(m) if i not in skip]


def one_column_minors(m: Matrix) -> list:
    """For an n x (n-1) matrix, the determinants with row i deleted (0-based)."""
    n, cols = shape(m)
    if cols != n - 1:
        raise ValueError(f"expected an n x (n-1) matrix, got {n}x{cols}")
    return [det(delete_rows(m, [i])) for i in range(n)]


def two_column_minors(m: Matrix, n: int | None = None) -> dict[tuple[int, int], object]:
    """Minors of an N x (N-2) matrix with rows alpha < beta deleted.

    Keys are 1-based ``(alpha, beta)``. For N = 2 the matrix has no columns
    and every minor is the empty determinant 1; pass ``n`` explicitly then,
    since a column-less matrix cannot carry its row count in Python lists.
    """
    rows = len(m) if n is None else n
    if rows < 2:
        raise ValueError("need at least two rows")
    if m and len(m) != rows:
        raise ValueError("row count does not match n")
    cols = len(m[0]) if m else 0
    if cols != rows - 2:
        raise ValueError(f"expected an N x (N-2) matrix, got {rows}x{cols}")
    out = {}
    for a, b in combinations(range(rows), 2):
        out[(a + 1, b + 1)] = det(delete_rows(m, [a, b])) if cols else 1
    return out


def laplace_two_columns(minors: dict[tuple[int, int], object], col_a: Sequence, col_b: Sequence):
    """Determinant of ``[m | col_a | col_b]`` from the minors of ``m``.

    Generalized Laplace expansion along the last two columns; with 1-based
    rows the sign of the (alpha, beta) term is (-1)^(alpha+beta+1).
    """
    total = 0
    for (a, b), minor in minors.items():
        pair = col_a[a - 1] * col_b[b - 1] - col_a[b - 1] * col_b[a - 1]
        term = minor * pair
        total = total + term if (a + b) % 2 else total - term
    return total


def matmul(a: Matrix, b: Matrix) -> list[list]:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError("inner dimensions differ")
    return [[sum((a[i][t] * b[t][j] for t in range(1, k)), a[i][0] * b[0][j]) for j in range(m)] for i in range(n)]
