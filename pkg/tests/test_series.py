from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from preprojhh.exactlin import RationalMatrix, ShapeError
from preprojhh.rootdata import root_datum
from preprojhh.series import (MatrixSeries, TruncatedSeries, exponents_product, fmt_rational,
                              inverse, matrix_inverse, matrix_series_det, parse_rational,
                              product_exponents, render_sparse)

T = TruncatedSeries.from_dict


def test_arith_examples():
    assert T({0: 1, 1: 1}, 3) * T({0: 1, 1: -1}, 3) == T({0: 1, 2: -1}, 3)
    geom = T({k: 1 for k in range(6)}, 5)
    assert geom * T({0: 1, 1: -1}, 5) == TruncatedSeries.one(5)
    C = RationalMatrix.from_rows([[0, 1], [1, 0]])
    Ct = MatrixSeries.from_terms({1: C}, 2, 3)
    assert Ct * Ct == MatrixSeries.from_terms({2: RationalMatrix.identity(2)}, 2, 3)


def test_mixed_orders_truncate_to_min():
    s = T({0: 1, 1: 1}, 5) * T({0: 1, 1: 1}, 2)
    assert s.order == 2 and s == T({0: 1, 1: 2, 2: 1}, 2)


def test_matrix_size_mismatch():
    with pytest.raises(ShapeError):
        MatrixSeries.identity(2, 3) + MatrixSeries.identity(3, 3)


def test_inverse_examples():
    assert inverse(T({0: 1, 1: -1}, 4)) == T({k: 1 for k in range(5)}, 4)
    with pytest.raises(ZeroDivisionError):
        inverse(T({1: 1}, 3))
    I = MatrixSeries.identity(3, 4)
    assert matrix_inverse(I) == I


def test_inverse_three_term_recurrence_a2():
    C = root_datum("A2").adjacency
    I = RationalMatrix.identity(2)
    M = MatrixSeries.from_terms({0: I, 1: C.scale(-1), 2: I}, 2, 3)
    inv = matrix_inverse(M)
    # u0 = I, u1 = C, u_{d+1} = C u_d - u_{d-1}
    u = [I, C]
    for _ in range(2):
        u.append(C @ u[-1] - u[-2])
    assert [inv[d] for d in range(4)] == u
    assert u[2].is_zero() and u[3] == C.scale(-1)


def test_det_examples():
    P = root_datum("A2").P
    M = MatrixSeries.from_terms({0: RationalMatrix.identity(2), 3: P}, 2, 8)
    assert matrix_series_det(M) == T({0: 1, 6: -1}, 8)
    assert matrix_series_det(MatrixSeries.identity(4, 5)) == TruncatedSeries.one(5)
    D = MatrixSeries.from_terms({0: RationalMatrix.identity(2),
                                 1: RationalMatrix.from_rows([[-1, 0], [0, 1]])}, 2, 4)
    assert matrix_series_det(D) == T({0: 1, 2: -1}, 4)


def leibniz_det(M: MatrixSeries) -> TruncatedSeries:
    n = M.size
    total = TruncatedSeries.from_dict({}, M.order)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = TruncatedSeries.one(M.order)
        for i in range(n):
            term = term * M.entry(i, p[i])
        total = total + (term if sign > 0 else -term)
    return total


coef = st.integers(-3, 3)


@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_det_matches_leibniz(n, order, data):
    terms = {}
    for d in range(order + 1):
        rows = [[data.draw(coef) for _ in range(n)] for _ in range(n)]
        terms[d] = RationalMatrix.from_rows(rows)
    M = MatrixSeries.from_terms(terms, n, order)
    assert matrix_series_det(M) == leibniz_det(M)


def test_product_exponents_examples():
    a = product_exponents(inverse(T({0: 1, 1: -1}, 6)), 6)
    assert a[1:] == [1, 0, 0, 0, 0, 0]
    F = inverse(T({0: 1, 2: -1}, 8)) ** 3
    a = product_exponents(F, 8)
    assert a[2] == 3 and all(a[k] == 0 for k in range(1, 9) if k != 2)
    with pytest.raises(ValueError):
        product_exponents(T({0: 2}, 3), 3)


@given(st.integers(1, 10), st.data())
def test_product_exponents_roundtrip(N, data):
    a = [0] + [data.draw(st.fractions(min_value=-3, max_value=3, max_denominator=3)) for _ in range(N)]
    F = exponents_product(a, N)
    assert product_exponents(F, N) == [Fraction(x) for x in a]
    G = T({0: 1, **{k: data.draw(coef) for k in range(1, N + 1)}}, N)
    assert exponents_product(product_exponents(G, N), N) == G


def test_render_and_json():
    s = T({0: 1, 4: 4, 5: Fraction(-1, 2)}, 6)
    assert str(s) == "1 + 4*t^4 - 1/2*t^5"
    assert render_sparse({}) == "0"
    assert TruncatedSeries.from_json(s.to_json()) == s
    assert s.to_json()[5] == "-1/2"
    assert fmt_rational(Fraction(3)) == "3"
    assert parse_rational(fmt_rational(Fraction(-7, 3))) == Fraction(-7, 3)


def test_substitute_power():
    s = T({0: 1, 1: 2, 2: 3}, 6)
    assert s.substitute_power(3) == T({0: 1, 3: 2, 6: 3}, 6)
