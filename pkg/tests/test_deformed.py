from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from preprojhh.deformed import (Weight, brute_force_trace, check_flatness, deformed_dimension,
                                parse_weight, random_generic_weight, rigidity_check,
                                typeA_dimension_identity, zero_weight)
from preprojhh.rootdata import SMALL_SUITE

from conftest import dq_of, rd_of


def trace(label, w, dmax=None):
    return deformed_dimension(dq_of(label), w, rd_of(label).h, dmax)


def test_random_weight_shapes():
    w = random_generic_weight(rd_of("A2"), 1)
    assert w[1] == -w[2] != 0
    assert all(v == 0 for v in random_generic_weight(rd_of("D4"), 1).values.values())
    rd = rd_of("E6")
    w = random_generic_weight(rd, 7)
    assert w[2] == w[4] == 0
    assert w[1] == -w[6] != 0 and w[3] == -w[5] != 0 and abs(w[1]) != abs(w[3])
    assert random_generic_weight(rd, 7) == w


@pytest.mark.parametrize("label", SMALL_SUITE)
def test_random_weights_antiinvariant(label):
    rd = rd_of(label)
    for seed in range(5):
        assert random_generic_weight(rd, seed).is_antiinvariant(rd.nu)


def test_parse_weight():
    rd = rd_of("A3")
    assert parse_weight("1,0,-1", rd).values == {1: 1, 2: 0, 3: -1}
    assert parse_weight("1/2, 0, -1/2", rd)[1] == Fraction(1, 2)
    for bad in ("1,1,-1", "1,0", "1,0,1"):
        with pytest.raises(ValueError):
            parse_weight(bad, rd)


@pytest.mark.parametrize("label,lam,value", [
    ("A2", None, 4),
    ("A2", "1,-1", 4),
    ("A3", "1,0,-1", 10),
])
def test_examples(label, lam, value):
    rd = rd_of(label)
    w = parse_weight(lam, rd) if lam else zero_weight(rd)
    tr = trace(label, w)
    assert tr.stabilized == value and tr.non_increasing
    assert check_flatness(rd, w, tr)


def test_flatness_d5_generic():
    rd = rd_of("D5")
    w = random_generic_weight(rd, 0)
    tr = trace("D5", w)
    assert tr.stabilized == 60 == 5 * 8 * 9 // 6 and check_flatness(rd, w, tr)


@pytest.mark.parametrize("label,lam", [("A2", "1,-1"), ("A3", "2,0,-2"), ("A2", None)])
def test_matches_brute_force(label, lam):
    rd = rd_of(label)
    w = parse_weight(lam, rd) if lam else zero_weight(rd)
    dmax = rd.h + 1
    assert trace(label, w, dmax).values == brute_force_trace(dq_of(label), w, rd.h, dmax)


def test_non_antiinvariant_weight_collapses():
    # lam = (1, 1) on A2 forces 1 = 0 after taking the trace of the relation
    w = Weight({1: Fraction(1), 2: Fraction(1)})
    tr = trace("A2", w)
    assert tr.stabilized == 0
    assert brute_force_trace(dq_of("A2"), w, 3, 4)[4] == 0


def test_no_stabilization_reported():
    tr = trace("A3", zero_weight(rd_of("A3")), dmax=3)
    assert tr.stabilized is None and not check_flatness(rd_of("A3"), zero_weight(rd_of("A3")), tr)
    with pytest.raises(ValueError):
        trace("A3", zero_weight(rd_of("A3")), dmax=1)


@given(st.fractions(min_value=-4, max_value=4, max_denominator=3),
       st.fractions(min_value=-4, max_value=4, max_denominator=3))
def test_negation_symmetry_a2(a, b):
    w = Weight({1: a, 2: b})
    assert trace("A2", w).stabilized == trace("A2", w.negate()).stabilized


@given(st.integers(-5, 5))
def test_negation_symmetry_a4(c):
    rd = rd_of("A4")
    w = Weight({1: Fraction(c), 2: Fraction(1), 3: Fraction(-1), 4: Fraction(-c)})
    tr, trn = trace("A4", w), trace("A4", w.negate())
    assert tr.stabilized == trn.stabilized == 20
    assert tr.values[rd.h - 2] >= tr.stabilized


def test_rigidity():
    assert rigidity_check(rd_of("D4"), {})
    assert rigidity_check(rd_of("A2"), {-2: 1})
    assert not rigidity_check(rd_of("A2"), {})
    assert rigidity_check(rd_of("E7"), {})
    assert not rigidity_check(rd_of("E7"), {-2: 1})


@pytest.mark.parametrize("n", range(1, 13))
def test_typeA_identity(n):
    assert typeA_dimension_identity(n)
    assert n * (n + 1) * (n + 2) // 6 == rd_of(f"A{n}").dim_algebra() if n <= 8 else True


def test_typeA_identity_examples():
    assert 2 * 3 * 4 // 6 == 4 and 3 * 4 * 5 // 6 == 10 == 9 + 1 and 5 * 6 * 7 // 6 == 35 == 25 + 9 + 1
    with pytest.raises(ValueError):
        typeA_dimension_identity(0)
