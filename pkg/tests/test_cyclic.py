import pytest

from preprojhh.closed_forms import expected_tables
from preprojhh.cyclic import (WindowError, connes_consistency, cyclic_tables, default_order, det_product,
                              euler_series_closed, euler_series_product)
from preprojhh.hochschild import hochschild_homology, homology_complex
from preprojhh.rootdata import FULL_EXTRA, SMALL_SUITE
from preprojhh.series import TruncatedSeries

from conftest import algebra, dq_of, frob, rd_of

T = TruncatedSeries.from_dict


def test_closed_examples():
    assert euler_series_closed(rd_of("A2"), 10) == T({k: -1 for k in range(2, 11, 2)}, 10)
    assert euler_series_closed(rd_of("A1"), 7).is_zero()
    D4 = euler_series_closed(rd_of("D4"), 30)
    first = {2: -1, 6: 2, 10: -1}
    want = {d + 12 * n: v for n in range(3) for d, v in first.items() if d + 12 * n <= 30}
    assert D4 == T(want, 30)


def test_product_examples():
    assert euler_series_product(algebra("A1").hilbert_matrix(9), 9).is_zero()
    chi = euler_series_product(algebra("A2").hilbert_matrix(9), 9)
    assert [chi[k] for k in range(1, 10)] == [0, -1, 0, -1, 0, -1, 0, -1, 0]


def test_det_product_needs_order():
    with pytest.raises(ValueError):
        det_product(algebra("A2").hilbert_matrix(4), 9)


@pytest.mark.parametrize("label", SMALL_SUITE + FULL_EXTRA)
def test_closed_equals_product(label):
    rd = rd_of(label)
    N = default_order(rd.h)
    assert N == 3 * rd.h + 1
    chi = euler_series_closed(rd, N)
    assert chi == euler_series_product(algebra(label).hilbert_matrix(N), N)
    assert cyclic_tables(rd, chi).HC == expected_tables(rd).HC


def test_table_examples():
    HC = cyclic_tables(rd_of("A2"), euler_series_closed(rd_of("A2"), 10)).HC
    assert (HC[1], HC[2], HC[3], HC[5]) == ({2: 1}, {}, {4: 1}, {6: 1})
    HC = cyclic_tables(rd_of("D4"), euler_series_closed(rd_of("D4"), 19)).HC
    assert (HC[1], HC[2], HC[3], HC[5]) == ({2: 1}, {6: 2}, {10: 1}, {})
    tab = cyclic_tables(rd_of("A1"), euler_series_closed(rd_of("A1"), 7))
    assert tab.HC[0] == {0: 1} and all(not tab.HC[i] for i in range(1, 7))


def test_periodicity():
    tab = cyclic_tables(rd_of("A3"), euler_series_closed(rd_of("A3"), 13))
    assert tab.group(7) == {d + 8: v for d, v in tab.HC[1].items()}
    assert tab.group(11) == {d + 8: v for d, v in tab.HC[5].items()}
    assert tab.notes


def test_window_errors():
    rd = rd_of("A2")
    bad = euler_series_closed(rd, 10) + T({3: 1}, 10)   # positive coefficient in the HC_3 window
    with pytest.raises(WindowError):
        cyclic_tables(rd, bad)
    with pytest.raises(WindowError):
        cyclic_tables(rd, euler_series_closed(rd, 10) + T({8: 1}, 10))   # breaks periodicity
    with pytest.raises(WindowError):
        cyclic_tables(rd, T({0: 1}, 10))


@pytest.mark.parametrize("label", ["A1", "A2", "D4", "E6"])
def test_connes_consistency(label):
    rd = rd_of(label)
    HH = hochschild_homology(homology_complex(frob(label), rd.h, dq_of(label)))
    tab = cyclic_tables(rd, euler_series_closed(rd, 3 * rd.h))
    assert connes_consistency(HH, tab).ok
    HH[4] = {**HH[4], 2 * rd.h + 1: 1}
    assert not connes_consistency(HH, tab).ok
