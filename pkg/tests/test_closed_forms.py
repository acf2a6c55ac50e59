import json

import pytest

from preprojhh.closed_forms import (compare, cyclic_windows, expected_tables, homology_windows,
                                    labelled, periodic, table_json, window_violations)
from preprojhh.rootdata import FULL_EXTRA, SMALL_SUITE, root_datum

ALL = SMALL_SUITE + FULL_EXTRA


@pytest.mark.parametrize("label,U,Y,K,L,Z", [
    ("E6", {2: 1, 8: 1, 10: 1}, 2, 2, 2, {0: 1, 6: 1, 8: 1, 10: 2}),
    ("A3", {2: 1}, 0, 1, 1, {0: 1, 2: 1}),
    ("D4", {2: 1}, 2, 0, 4, {0: 1, 4: 4}),
])
def test_examples(label, U, Y, K, L, Z):
    cf = expected_tables(root_datum(label))
    assert (cf.h_U, cf.dimY, cf.dimK, cf.dimL, cf.h_Z) == (U, Y, K, L, Z)


@pytest.mark.parametrize("label", ALL)
def test_invariants(label):
    rd = root_datum(label)
    cf = expected_tables(rd)
    assert cf.dimY >= 0 and cf.dimL >= 0
    assert not window_violations(cf.HH, homology_windows(rd.h))
    assert not window_violations({i: t for i, t in cf.HC.items() if i}, cyclic_windows(rd.h))
    assert cf.HH[6] == ({2 * rd.h: rd.r_minus} if rd.r_minus else {})
    # self-duality at the level of total dimensions
    tot = {i: sum(cf.HH[i].values()) for i in range(7)}
    assert tot[1] + tot[2] == tot[3] + tot[4]
    assert tot[2] - tot[1] == tot[3] - tot[4]
    assert cf.HHc[0] == cf.h_Z


def test_compare_pass_and_fail():
    cf = expected_tables(root_datum("A2"))
    assert compare(labelled(cf.HH, "HH_"), labelled(cf.HH, "HH_")).ok
    good = expected_tables(root_datum("D4")).HH
    bad = {i: dict(t) for i, t in good.items()}
    bad[5] = {12: 1}
    rep = compare(labelled(bad, "HH_"), labelled(good, "HH_"))
    assert not rep.ok
    assert rep.mismatches == [("HH_5", 12, 1, 0)]
    assert rep.groups["HH_5"] is False and rep.groups["HH_4"] is True
    js = rep.to_json()
    assert js["pass"] is False and len(js["mismatches"]) == 1
    assert "HH_5 degree 12" in rep.to_text()
    json.dumps(js)


def test_periodic_and_json():
    cf = expected_tables(root_datum("A2"))
    assert periodic(cf.HH, 8, 3) == {2 + 6: 1}
    assert periodic(cf.HHc, 8, 3, sign=-1) == {d - 6: v for d, v in cf.HHc[2].items()}
    js = table_json(cf.HH, "HH_")
    assert js["HH_5"] == {"6": 1} and js["HH_0"] == {"0": 2}
