"""Exact rational simplex for  max c.x  s.t.  A x <= b,  x >= 0,  b >= 0.

With b >= 0 the origin is a feasible basis, so a single phase suffices.
Bland's rule keeps the method from cycling on degenerate pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    b = [Fraction(x) for x in b]
    if any(x < 0 for x in b):
        raise ValueError("right-hand side must be non-negative")
    # tableau rows: [A | I | b]; objective row holds reduced costs of -c
    width = n + m
    rows = []
    for i, row in enumerate(A):
        r = [Fraction(x) for x in row] + [Fraction(0)] * m + [b[i]]
        r[n + i] = Fraction(1)
        rows.append(r)
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))
    pivots = 0

    while True:
        # Bland: lowest-index column with negative reduced cost
        col = next((j for j in range(width) if obj[j] < 0), None)
        if col is None:
            break
        best = None
        for i in range(m):
            a = rows[i][col]
            if a > 0:
                ratio = rows[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded("objective is unbounded")
        r = best[1]
        piv = rows[r][col]
        prow = [x / piv for x in rows[r]]
        rows[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i in range(m):
            f = rows[i][col]
            if i != r and f:
                ri = rows[i]
                for j in nz:
                    ri[j] -= f * prow[j]
        f = obj[col]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[r] = col
        pivots += 1

    x = [Fraction(0)] * n
    for i, v in enumerate(basis):
        if v < n:
            x[v] = rows[i][-1]
    return LPSolution(obj[-1], tuple(x), pivots)
