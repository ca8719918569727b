"""Exact Gauss-Jordan elimination over the rationals."""

from dataclasses import dataclass

from gmpy2 import mpq

__all__ = ["LinearSolution", "solve_exact", "rank"]


@dataclass
class LinearSolution:
    x: list
    rank: int
    pivots: list
    free: list
    consistent: bool
    residual_rows: list  # indices of inconsistent rows, if any


def _rref(rows, ncols):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [v * inv for v in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [a - f * b for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_exact(A, b):
    """Solve ``A x = b`` exactly; free variables are set to zero.

    Columns are eliminated left to right, so a column that depends on the
    columns before it becomes free.  Callers control the gauge through the
    column order.
    """
    ncols = len(A[0]) if A else 0
    aug = [[mpq(v) for v in row] + [mpq(bi)] for row, bi in zip(A, b)]
    red, pivots = _rref(aug, ncols)
    bad = [i for i in range(len(pivots), len(red)) if red[i][ncols]]
    x = [mpq(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    return LinearSolution(x, len(pivots), pivots, free, not bad, bad)


def rank(A):
    if not A:
        return 0
    return len(_rref([[mpq(v) for v in row] for row in A], len(A[0]))[1])
