"""Exact rational simplex for 0/1 covering programs.

    minimise   sum_j x_j
    subject to sum_{j in S_i} x_j >= 1   for every row i
               x >= 0

The packing dual (max sum_i y_i, sum_{i : j in S_i} y_i <= 1) has the
origin as a feasible basis, so a single phase with Bland's rule suffices.
The optimal covering weights are the reduced costs of the dual slacks.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def covering_lp(rows: Sequence[set[int]], ncols: int) -> tuple[Fraction, list[Fraction]]:
    """Solve the covering LP. Every row must be nonempty."""
    m = len(rows)
    if m == 0:
        return ZERO, [ZERO] * ncols
    for r in rows:
        if not r:
            raise ValueError("covering row with no columns is infeasible")
    width = m + ncols  # y_0..y_{m-1}, then slacks s_0..s_{ncols-1}
    tableau = []
    for j in range(ncols):
        row = [ONE if j in rows[i] else ZERO for i in range(m)]
        row += [ONE if k == j else ZERO for k in range(ncols)]
        row.append(ONE)
        tableau.append(row)
    obj = [-ONE] * m + [ZERO] * ncols + [ZERO]
    basis = [m + j for j in range(ncols)]

    while True:
        # Bland: lowest-index improving column
        enter = next((k for k in range(width) if obj[k] < 0), None)
        if enter is None:
            break
        best = None
        for r, row in enumerate(tableau):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            raise ArithmeticError("packing dual unbounded")
        _pivot(tableau, obj, best[1], enter)
        basis[best[1]] = enter

    x = [obj[m + j] for j in range(ncols)]
    return obj[-1], x


def _pivot(tableau, obj, r, c):
    prow = tableau[r]
    p = prow[c]
    if p != 1:
        prow[:] = [v / p for v in prow]
    for other in tableau:
        if other is not prow and other[c] != 0:
            f = other[c]
            other[:] = [v - f * w for v, w in zip(other, prow)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [v - f * w for v, w in zip(obj, prow)]
