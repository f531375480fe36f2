from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from chainspace.lp import Unbounded, maximize


def test_textbook_example():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    sol = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert sol.value == 36
    assert sol.x == (2, 6)


def test_exact_fractions():
    sol = maximize([1, 1], [[3, 1], [1, 3]], [1, 1])
    assert sol.value == Fraction(1, 2)
    assert sol.x == (Fraction(1, 4), Fraction(1, 4))


def test_unbounded():
    with pytest.raises(Unbounded):
        maximize([1, 0], [[0, 1]], [1])


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule; Bland terminates.
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    sol = maximize(c, A, [0, 0, 1])
    assert sol.value == Fraction(1, 20)


def vertex_oracle(c, A, b):
    """Best objective over all basic solutions (brute force vertex enumeration)."""
    n = len(c)
    rows = [list(map(Fraction, r)) for r in A] + [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rhs = [Fraction(x) for x in b] + [Fraction(0)] * n
    best = None
    for pick in combinations(range(len(rows)), n):
        M = np.array([[float(x) for x in rows[i]] for i in pick])
        if abs(np.linalg.det(M)) < 1e-9:
            continue
        x = np.linalg.solve(M, [float(rhs[i]) for i in pick])
        if all(x >= -1e-9) and all(np.array([[float(v) for v in r] for r in A]) @ x <= np.array([float(v) for v in b]) + 1e-9):
            val = float(np.dot([float(v) for v in c], x))
            best = val if best is None else max(best, val)
    return best


small = st.integers(-4, 6)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.lists(small, min_size=n, max_size=n),
            st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n), min_size=1, max_size=4),
        )
    ),
    st.data(),
)
def test_against_float_solvers(problem, data):
    c, A = problem
    # positive rows on every variable keep the problem bounded
    A = A + [[1] * len(c)]
    b = data.draw(st.lists(st.integers(0, 9), min_size=len(A), max_size=len(A)))
    sol = maximize(c, A, b)
    ref = linprog([-x for x in c], A_ub=A, b_ub=b, bounds=[(0, None)] * len(c))
    assert ref.status == 0
    assert float(sol.value) == pytest.approx(-ref.fun, abs=1e-7)
    assert float(sol.value) == pytest.approx(vertex_oracle(c, A, b), abs=1e-7)
    # returned point is feasible exactly
    for row, rhs in zip(A, b):
        assert sum(Fraction(a) * x for a, x in zip(row, sol.x)) <= rhs
    assert all(x >= 0 for x in sol.x)
