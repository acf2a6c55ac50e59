"""Cyclic homology from the Euler characteristic and degree windows.

Within the first period the reduced groups HC_1, HC_2, HC_3, HC_5 occupy
pairwise disjoint degree windows, so each one is read off the Euler
characteristic chi(t) = sum (-1)^i h_{HC_i}(t) by restricting to its window.
chi is computed two ways: from the closed expression in the root data, and
from the product identity prod_k (1 - t^k)^(-a_k) = prod_s det H_A(t^s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .closed_forms import Graded, clean, concentrated, cyclic_windows
from .rootdata import RootDatum
from .series import MatrixSeries, TruncatedSeries, matrix_series_det, product_exponents


class WindowError(ValueError):
    pass


def default_order(h: int) -> int:
    return 3 * h + 1


def euler_series_closed(rd: RootDatum, N: int) -> TruncatedSeries:
    h = rd.h
    num = {}
    for m in rd.exponents:
        num[2 * m] = num.get(2 * m, 0) - 1
    num[2 * h] = num.get(2 * h, 0) - rd.r_minus
    num[h] = num.get(h, 0) + rd.r_plus - rd.r_minus
    numer = TruncatedSeries.from_dict(num, N)
    geom = TruncatedSeries.from_dict({2 * h * k: 1 for k in range(N // (2 * h) + 1)}, N)
    return numer * geom


def det_product(H: MatrixSeries, N: int) -> TruncatedSeries:
    """prod_{s>=1} det H(t^s) mod t^(N+1); factors with s > N are 1."""
    if H.order < N:
        raise ValueError("Hilbert matrix must be given to order at least N")
    base = matrix_series_det(H).truncate(N)
    out = TruncatedSeries.one(N)
    for s in range(1, N + 1):
        out = out * base.substitute_power(s)
    return out


def euler_series_product(H: MatrixSeries, N: int) -> TruncatedSeries:
    a = product_exponents(det_product(H, N), N)
    return TruncatedSeries(N, tuple(a))


@dataclass
class CyclicTable:
    h: int
    HC: dict                 # i -> Graded for i = 0..6 (HC_0 unreduced)
    reduced: bool = True     # chi counts reduced HC_0 = HC_0 / R = 0
    notes: list = field(default_factory=list)

    def group(self, i: int) -> Graded:
        if i <= 6:
            return self.HC[i]
        n, j = divmod(i - 1, 6)
        return {d + 2 * n * self.h: v for d, v in self.HC[j + 1].items()}


def cyclic_tables(rd: RootDatum, chi: TruncatedSeries) -> CyclicTable:
    h = rd.h
    if chi.order < 2 * h:
        raise ValueError("Euler characteristic needs order at least 2h")
    if chi[0]:
        raise WindowError("reduced HC_0 must vanish")
    windows = cyclic_windows(h)
    sign = {1: -1, 2: 1, 3: -1, 5: -1}
    HC: dict[int, Graded] = {0: concentrated(rd.r), 4: {}, 6: {}}
    for i in (1, 2, 3, 5):
        lo, hi = windows[i]
        t = {}
        for d in range(lo, hi + 1):
            v = sign[i] * chi[d]
            if v < 0 or v.denominator != 1:
                raise WindowError(f"coefficient {chi[d]} at t^{d} has the wrong sign for HC_{i}")
            if v:
                t[d] = int(v)
        HC[i] = clean(t)
    for d in range(2 * h + 1, chi.order + 1):
        if chi[d] != chi[d - 2 * h]:
            raise WindowError(f"Euler characteristic is not 2h-periodic at t^{d}")
    tab = CyclicTable(h, HC)
    tab.notes.append("periodicity applied to HC (the printed statement repeats HH there)")
    return tab


@dataclass
class ConnesReport:
    mismatches: list  # (relation, degree, lhs, rhs)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def connes_consistency(hh: dict, hc: CyclicTable) -> ConnesReport:
    """Split of the Connes sequence: dims of HH_1..HH_6 in terms of HC_1..HC_5."""
    from .closed_forms import plus
    HC = hc.HC
    checks = {
        "HH_1 = HC_1": (hh[1], HC[1]),
        "HH_2 = HC_1 + HC_2": (hh[2], plus(HC[1], HC[2])),
        "HH_3 = HC_2 + HC_3": (hh[3], plus(HC[2], HC[3])),
        "HH_4 = HC_3": (hh[4], HC[3]),
        "HH_5 = HC_5": (hh[5], HC[5]),
        "HH_6 = HC_5": (hh[6], HC[5]),
    }
    bad = []
    for name, (lhs, rhs) in checks.items():
        for d in sorted(set(lhs) | set(rhs)):
            if lhs.get(d, 0) != rhs.get(d, 0):
                bad.append((name, d, lhs.get(d, 0), rhs.get(d, 0)))
    return ConnesReport(bad)
