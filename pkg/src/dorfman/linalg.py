"""Small exact linear algebra over Q / Q(i) and over polynomial rings."""

from __future__ import annotations

from typing import List, Sequence

from .polynomial import Chart, Polynomial
from .scalars import div, normalize


class SingularMatrix(ValueError):
    pass


def invert(matrix: Sequence[Sequence]) -> List[List]:
    """Gauss-Jordan inverse of a constant square matrix."""
    n = len(matrix)
    a = [[normalize(x) for x in row] + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [div(x, p) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [normalize(x - factor * y) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def inertia(matrix: Sequence[Sequence]):
    """(positive, negative, zero) counts for a rational symmetric matrix."""
    n = len(matrix)
    a = [[normalize(x) for x in row] for row in matrix]
    pos = neg = 0
    size = n
    while size:
        # find a nonzero diagonal pivot, or create one from an off-diagonal entry
        k = next((i for i in range(size) if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(size) for j in range(size) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by row/col i + row/col j
            for c in range(size):
                a[i][c] = a[i][c] + a[j][c]
            for r in range(size):
                a[r][i] = a[r][i] + a[r][j]
            k = i
        # move pivot to the end and eliminate
        a[k], a[size - 1] = a[size - 1], a[k]
        for row in a:
            row[k], row[size - 1] = row[size - 1], row[k]
        p = a[size - 1][size - 1]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(size - 1):
            f = div(a[r][size - 1], p)
            if f != 0:
                for c in range(size - 1):
                    a[r][c] = normalize(a[r][c] - f * a[size - 1][c])
        size -= 1
    return pos, neg, n - pos - neg


def poly_det(chart: Chart, matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a polynomial matrix by Laplace expansion over column subsets."""
    n = len(matrix)
    if n == 0:
        return chart.one()
    # minors[mask] = det of rows 0..popcount(mask)-1 restricted to columns in mask
    minors = {0: chart.one()}
    for row in range(n):
        nxt = {}
        for mask, m in minors.items():
            if m.is_zero():
                continue
            # sign counts columns already used that lie to the right of the new column
            for col in range(n):
                bit = 1 << col
                if mask & bit or matrix[row][col].is_zero():
                    continue
                right = bin(mask >> (col + 1)).count("1")
                term = matrix[row][col] * m
                if right % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = nxt
    return minors.get((1 << n) - 1, chart.zero())


def poly_inverse(chart: Chart, matrix: Sequence[Sequence[Polynomial]]) -> List[List[Polynomial]]:
    """Inverse of a polynomial matrix whose determinant is a nonzero constant."""
    n = len(matrix)
    det = poly_det(chart, matrix)
    if det.is_zero() or not det.is_constant():
        raise SingularMatrix(f"determinant {det} is not a nonzero constant")
    inv_det = det.constant_term()
    out = [[chart.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[matrix[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = poly_det(chart, minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof / inv_det
    return out
