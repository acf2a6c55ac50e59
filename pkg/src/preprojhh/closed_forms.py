"""Closed-form graded answers for HH_*, HH^* and HC_* and a table differ.

A graded dimension is a plain ``{degree: dim}`` dict with zero entries
dropped. Duals of finite graded spaces are reflected immediately
(degree d -> -d), so M^*[n] is ``shift(dual(M), n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .rootdata import RootDatum

Graded = dict  # {degree: dim}


def clean(t: Graded) -> Graded:
    return {d: v for d, v in sorted(t.items()) if v}


def shift(t: Graded, n: int) -> Graded:
    """M[n]: degree d of M sits in degree d + n."""
    return {d + n: v for d, v in t.items()}


def dual(t: Graded) -> Graded:
    return {-d: v for d, v in t.items()}


def plus(*ts: Graded) -> Graded:
    out: Graded = {}
    for t in ts:
        for d, v in t.items():
            out[d] = out.get(d, 0) + v
    return clean(out)


def concentrated(dim: int, degree: int = 0) -> Graded:
    return {degree: dim} if dim else {}


@dataclass
class ClosedForms:
    h_U: Graded
    dimY: int
    dimK: int
    dimL: int
    h_Z: Graded
    HH: dict       # i -> Graded, homology
    HHc: dict      # i -> Graded, cohomology
    HC: dict       # i -> Graded


def expected_tables(rd: RootDatum) -> ClosedForms:
    h = rd.h
    U = clean({2 * m: 0 for m in rd.exponents})
    for m in rd.exponents:
        if 2 * m < h:
            U[2 * m] = U.get(2 * m, 0) + 1
    U = clean(U)
    half = sum(1 for m in rd.exponents if 2 * m == h)
    dimY = rd.r_plus - rd.r_minus - half
    dimK = rd.r_minus
    dimL = rd.r_plus - rd.r_minus
    Y, K, L = concentrated(dimY), concentrated(dimK), concentrated(dimL)
    Ustar = dual(U)
    HH = {
        0: concentrated(rd.r),
        1: clean(U),
        2: plus(U, shift(Y, h)),
        3: plus(shift(Ustar, 2 * h), shift(dual(Y), h)),
        4: shift(Ustar, 2 * h),
        5: shift(K, 2 * h),
        6: shift(K, 2 * h),
    }
    HHc = {
        0: plus(shift(U, -2), shift(L, h - 2)),
        1: shift(U, -2),
        2: shift(K, -2),
        3: shift(K, -2),
        4: shift(Ustar, -2),
        5: plus(shift(Ustar, -2), shift(dual(Y), -h - 2)),
        6: plus(shift(U, -2 * h - 2), shift(Y, -h - 2)),
    }
    HC = {
        0: concentrated(rd.r),
        1: clean(U),
        2: shift(dual(Y), h),
        3: shift(Ustar, 2 * h),
        4: {},
        5: shift(K, 2 * h),
        6: {},
    }
    h_Z = plus({2 * m - 2: 1 for m in rd.exponents if 2 * m < h}, concentrated(dimL, h - 2))
    return ClosedForms(U, dimY, dimK, dimL, h_Z, HH, HHc, HC)


def expected_hilbert_matrix(rd: RootDatum, N: int):
    """(1 + P t^h)(1 - C t + t^2)^(-1) to order N, C the adjacency matrix."""
    from .exactlin import RationalMatrix
    from .series import MatrixSeries, matrix_inverse
    r = rd.r
    one = MatrixSeries.identity(r, N)
    denom = MatrixSeries.from_terms({0: RationalMatrix.identity(r), 1: rd.adjacency.scale(-1),
                                     2: RationalMatrix.identity(r)}, r, N)
    numer = one + MatrixSeries.from_terms({rd.h: rd.P}, r, N) if rd.h <= N else one
    return numer * matrix_inverse(denom)


def periodic(table: dict, i: int, h: int, sign: int = 1) -> Graded:
    """Group i >= 1 from the first period: X_{6n+j} = X_j[2nh] (sign -1 for cohomology)."""
    if i <= 6:
        return table[i]
    n, j = divmod(i - 1, 6)
    return shift(table[j + 1], sign * 2 * n * h)


def homology_windows(h: int) -> dict[int, tuple[int, int]]:
    return {0: (0, 0), 1: (1, h - 1), 2: (2, h), 3: (h, 2 * h - 2), 4: (h + 1, 2 * h - 1),
            5: (h + 2, 2 * h), 6: (2 * h, 2 * h)}


def cyclic_windows(h: int) -> dict[int, tuple[int, int] | None]:
    return {0: (0, 0), 1: (1, h - 1), 2: (h, h), 3: (h + 1, 2 * h - 1), 4: None,
            5: (2 * h, 2 * h), 6: None}


def window_violations(table: dict, windows: dict) -> list[tuple[int, int]]:
    bad = []
    for i, t in table.items():
        w = windows.get(i)
        for d, v in t.items():
            if v and (w is None or not w[0] <= d <= w[1]):
                bad.append((i, d))
    return bad


@dataclass
class ComparisonReport:
    groups: dict = field(default_factory=dict)       # group name -> bool
    mismatches: list = field(default_factory=list)   # (group, degree, computed, expected)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "ComparisonReport") -> "ComparisonReport":
        self.groups.update(other.groups)
        self.mismatches.extend(other.mismatches)
        return self

    def to_json(self) -> dict:
        return {
            "pass": self.ok,
            "groups": {k: self.groups[k] for k in sorted(self.groups)},
            "mismatches": [{"group": g, "degree": d, "computed": c, "expected": e}
                           for g, d, c, e in self.mismatches],
        }

    def to_text(self) -> str:
        lines = [f"{'PASS' if self.ok else 'FAIL'} ({len(self.groups)} groups, "
                 f"{len(self.mismatches)} mismatches)"]
        for g, d, c, e in self.mismatches:
            lines.append(f"  {g} degree {d}: computed {c}, expected {e}")
        return "\n".join(lines)


def compare(computed: dict, expected: dict) -> ComparisonReport:
    """Per-degree diff of ``{group: Graded}`` tables; groups missing on one side count as empty."""
    rep = ComparisonReport()
    for g in sorted(set(computed) | set(expected)):
        c, e = clean(computed.get(g, {})), clean(expected.get(g, {}))
        ok = True
        for d in sorted(set(c) | set(e)):
            if c.get(d, 0) != e.get(d, 0):
                rep.mismatches.append((g, d, c.get(d, 0), e.get(d, 0)))
                ok = False
        rep.groups[g] = ok
    return rep


def labelled(table: dict, prefix: str) -> dict:
    return {f"{prefix}{i}": t for i, t in table.items()}


def table_json(table: dict, prefix: str) -> dict:
    """{"HH_k": {"degree": dim}} with stringified integer degrees."""
    return {f"{prefix}{i}": {str(d): v for d, v in sorted(t.items())} for i, t in sorted(table.items())}


def graded_to_text(t: Graded) -> str:
    from .series import render_sparse
    return render_sparse(t) if t else "0"
