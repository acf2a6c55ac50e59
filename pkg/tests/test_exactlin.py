from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from preprojhh.exactlin import (RationalMatrix, ShapeError, det, inverse, nullspace_basis, rank,
                                rref, solve)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    # bias toward low rank with repeated / zero rows
    rows = [draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]
    if m >= 2 and draw(st.booleans()):
        c = draw(small)
        rows[-1] = [c * x for x in rows[0]]
    return RationalMatrix(m, n, rows)


def leibniz(M):
    n = M.rows
    total = Fraction(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= M[i, p[i]]
        total += term
    return total


def test_rref_examples():
    R, piv = rref([[2, 4], [1, 2]])
    assert R == RationalMatrix.from_rows([[1, 2], [0, 0]]) and piv == [0]
    R, piv = rref(RationalMatrix.identity(3))
    assert R == RationalMatrix.identity(3) and piv == [0, 1, 2]
    R, piv = rref(RationalMatrix.zeros(2, 3))
    assert R.is_zero() and piv == []


def test_rank_nullspace_solve_examples():
    assert rank(RationalMatrix.identity(4)) == 4
    K = nullspace_basis([[1, 1]])
    assert K.shape == (2, 1)
    assert K[0, 0] == -K[1, 0] != 0
    assert solve([[2]], [3]) == [Fraction(3, 2)]


def test_solve_inconsistent_and_shape():
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ShapeError):
        solve([[1, 2]], [1, 2])


def test_inverse_and_det():
    M = RationalMatrix.from_rows([[2, 1], [7, 4]])
    assert M @ inverse(M) == RationalMatrix.identity(2)
    assert det(M) == 1
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])
    assert inverse(RationalMatrix(0, 0, [])).shape == (0, 0)


@given(matrices())
def test_rank_plus_nullity(M):
    K = nullspace_basis(M)
    assert rank(M) + K.cols == M.cols
    if M.rows and K.cols:
        assert (M @ K).is_zero()


@given(matrices())
def test_rref_idempotent_and_pivots(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert piv == sorted(set(piv))
    for r, c in enumerate(piv):
        assert R[r, c] == 1
        assert all(R[k, c] == 0 for k in range(R.rows) if k != r)


@given(matrices())
def test_rank_transpose(M):
    assert rank(M) == rank(M.T)


@given(matrices(), st.data())
def test_solve_consistent(M, data):
    x = [data.draw(small) for _ in range(M.cols)]
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_matches_leibniz(rows):
    M = RationalMatrix.from_rows(rows)
    assert det(M) == leibniz(M)
