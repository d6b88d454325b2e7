"""Smith normal form over the integers, exact (Python ints throughout)."""

from __future__ import annotations

__all__ = ["smith_normal_form", "smith_with_transforms", "invariant_factors"]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_with_transforms(matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, L, R)`` with ``L @ M @ R == D`` and L, R unimodular.

    Pivoting always picks the smallest nonzero absolute value in the
    remaining block.  ``D`` is diagonal with ``d1 | d2 | ...`` and the zero
    diagonal entries last.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = _identity(rows)
    right = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row[dst] += k * row[src]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # pivot must divide the whole remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        if a[t][t] == 0:
            break
    return a, left, right


def smith_normal_form(matrix) -> list[list[int]]:
    return smith_with_transforms(matrix)[0]


def invariant_factors(matrix, ncols: int | None = None) -> list[int]:
    """Invariant factors of ``Z^ncols / rowspace(matrix)``: units dropped, 0 for Z."""
    if ncols is None:
        ncols = len(matrix[0]) if len(matrix) else 0
    if not len(matrix):
        return [0] * ncols
    d = smith_normal_form(matrix)
    diag = [d[i][i] for i in range(min(len(d), ncols))]
    nonzero = [x for x in diag if x != 0]
    return [x for x in nonzero if x != 1] + [0] * (ncols - len(nonzero))
