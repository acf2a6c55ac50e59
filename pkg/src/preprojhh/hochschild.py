"""Hochschild homology and cohomology of A through the period-6 complex.

Chain spaces (total degree = internal degree + shift):

    C0 = A^R       C1 = (V A)^R      C2 = A^R[2]      C3 = N^R[h]
    C4 = (V N)^R[h]   C5 = N^R[h+2]   C6 = A^R[2h]     C7 = (V A)^R[2h]

where N is A with right action twisted by eta, so that

    A^R = sum_i e_i A e_i,            N^R = sum_i e_i A e_nu(i),
    (V A)^R = span{a (x) y : a: i -> j, y in e_j A e_i},
    (V N)^R = span{a (x) y : a: i -> j, y in e_j A e_nu(i)}.

Slots of A-type spaces are basis indices of A; slots of V-type spaces are
(arrow name, basis index) pairs, the arrow written first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import exactlin
from .exactlin import RationalMatrix
from .preproj import FrobeniusData, GradedAlgebra, Vec, casimir_sandwich, vadd

KINDS = ("A", "N", "VA", "VN")
RESOLUTION_DIM_LIMIT = 60


class ResolutionTooLarge(ValueError):
    pass


@dataclass
class GradedVectorSpaceBasis:
    kind: str
    shift: int
    slots: dict  # total degree -> list of slots

    def basis(self, degree: int) -> list:
        return self.slots.get(degree, [])

    def dims(self) -> dict[int, int]:
        return {d: len(s) for d, s in sorted(self.slots.items()) if s}

    def degrees(self) -> list[int]:
        return sorted(d for d, s in self.slots.items() if s)


def invariant_basis(A: GradedAlgebra, F: FrobeniusData, kind: str, shift: int) -> GradedVectorSpaceBasis:
    if kind not in KINDS:
        raise ValueError(f"unknown space kind {kind!r}")
    nu = F.nu
    slots: dict[int, list] = defaultdict(list)
    if kind in ("A", "N"):
        for d, ks in enumerate(A.degrees):
            for k in ks:
                b = A.basis[k]
                want = b.source if kind == "A" else nu[b.source]
                if b.target == want:
                    slots[d + shift].append(k)
    else:
        for a in A.generators:
            end = a.source if kind == "VA" else nu[a.source]
            for d, ks in enumerate(A.degrees):
                for k in ks:
                    b = A.basis[k]
                    if b.source == a.target and b.target == end:
                        slots[d + 1 + shift].append((a.name, k))
        for d in slots:
            slots[d].sort(key=lambda s: (s[1], s[0]))
    return GradedVectorSpaceBasis(kind, shift, dict(slots))


class HochschildData:
    """The algebra-level maps d1'..d6' acting on sparse elements."""

    def __init__(self, F: FrobeniusData, dq=None):
        self.F = F
        self.A = F.A
        A = self.A
        self.eps = {}
        self.star = {}
        for g in A.generators:
            if dq is not None:
                self.eps[g.name], self.star[g.name] = dq.eps[g.name], dq.star[g.name]
            else:
                starred = g.name.endswith("*")
                self.eps[g.name] = -1 if starred else 1
                self.star[g.name] = g.name[:-1] if starred else g.name + "*"
        self.gidx = {g.name: A.generator_index(g.name) for g in A.generators}
        self.eta_gen = {g.name: F.eta[self.gidx[g.name]] for g in A.generators}

    def _arrow(self, name):
        return {self.gidx[name]: Fraction(1)}

    def d1(self, v: dict) -> Vec:
        """a (x) y -> [a, y]."""
        A = self.A
        out: Vec = {}
        for (name, k), c in v.items():
            a, y = self._arrow(name), {k: Fraction(1)}
            vadd(out, A.mul(a, y), c)
            vadd(out, A.mul(y, a), -c)
        return out

    def d2(self, x: Vec) -> dict:
        """x -> -sum_a eps_a a* (x) [a, x]."""
        A = self.A
        out: dict = {}
        for g in A.generators:
            a = self._arrow(g.name)
            br = vadd(A.mul(a, x), A.mul(x, a), -1)
            sname = self.star[g.name]
            for k, c in br.items():
                key = (sname, k)
                val = out.get(key, 0) - self.eps[g.name] * c
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def d3(self, x: Vec) -> Vec:
        """x -> sum_i x_i x eta(x_i^*)."""
        return casimir_sandwich(self.F, x, twist=True)

    def d4(self, v: dict) -> Vec:
        """a (x) y -> a y - y eta(a)."""
        A = self.A
        out: Vec = {}
        for (name, k), c in v.items():
            y = {k: Fraction(1)}
            vadd(out, A.mul(self._arrow(name), y), c)
            vadd(out, A.mul(y, self.eta_gen[name]), -c)
        return out

    def d5(self, x: Vec) -> dict:
        """x -> sum_a eps_a a* (x) (x eta(a) - a x)."""
        A = self.A
        out: dict = {}
        for g in A.generators:
            val = vadd(A.mul(x, self.eta_gen[g.name]), A.mul(self._arrow(g.name), x), -1)
            sname = self.star[g.name]
            for k, c in val.items():
                key = (sname, k)
                y = out.get(key, 0) + self.eps[g.name] * c
                if y:
                    out[key] = y
                else:
                    out.pop(key, None)
        return out

    def d6(self, x: Vec) -> Vec:
        """x -> sum_i x_i x x_i^*."""
        return casimir_sandwich(self.F, x, twist=False)

    def differential(self, k: int) -> Callable:
        return {1: self.d1, 2: self.d2, 3: self.d3, 4: self.d4,
                5: self.d5, 6: self.d6, 7: self.d1}[k]


def _unit(slot) -> dict:
    return {slot: Fraction(1)}


def map_matrix(fn: Callable, src: GradedVectorSpaceBasis, tgt: GradedVectorSpaceBasis,
               degree: int) -> RationalMatrix:
    """Matrix of ``fn`` from src(degree) to tgt(degree); rows index the target."""
    cols = src.basis(degree)
    rows = tgt.basis(degree)
    pos = {s: n for n, s in enumerate(rows)}
    m = [[Fraction(0)] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        img = fn(_unit(s))
        for t, c in img.items():
            if t not in pos:
                raise AssertionError(f"image of {s} leaves the target space at {t} (degree {degree})")
            m[pos[t]][j] = c
    return RationalMatrix(len(rows), len(cols), m)


@dataclass
class GradedComplex:
    """Graded spaces with degree-preserving maps between them.

    ``maps[n] = (source position, target position, map)``. A position is an
    index into ``spaces``; homology at a position uses the map leaving it and
    the map entering it.
    """
    spaces: list
    maps: list
    names: list
    _cache: dict = field(default_factory=dict, repr=False)

    def matrix(self, n: int, degree: int) -> RationalMatrix:
        key = (n, degree)
        if key not in self._cache:
            s, t, fn = self.maps[n]
            self._cache[key] = map_matrix(fn, self.spaces[s], self.spaces[t], degree)
        return self._cache[key]

    def rank(self, n: int, degree: int) -> int:
        key = ("rank", n, degree)
        if key not in self._cache:
            s, t, _ = self.maps[n]
            if not self.spaces[s].basis(degree) or not self.spaces[t].basis(degree):
                self._cache[key] = 0
            else:
                self._cache[key] = exactlin.rank(self.matrix(n, degree))
        return self._cache[key]

    def all_degrees(self) -> list[int]:
        ds = set()
        for sp in self.spaces:
            ds.update(sp.degrees())
        return sorted(ds)

    def homology_at(self, pos: int) -> dict[int, int]:
        out_maps = [n for n, (s, _, _) in enumerate(self.maps) if s == pos]
        in_maps = [n for n, (_, t, _) in enumerate(self.maps) if t == pos]
        table = {}
        for d in self.spaces[pos].degrees():
            dim = len(self.spaces[pos].basis(d))
            dim -= sum(self.rank(n, d) for n in out_maps)
            dim -= sum(self.rank(n, d) for n in in_maps)
            if dim:
                table[d] = dim
        return table

    def composites_vanish(self) -> list[tuple[int, int, int]]:
        """(map, map, degree) triples where a consecutive composite is nonzero."""
        bad = []
        for n1, (s1, t1, _) in enumerate(self.maps):
            for n2, (s2, t2, _) in enumerate(self.maps):
                if s2 != t1:
                    continue
                for d in self.all_degrees():
                    if not self.spaces[s1].basis(d) or not self.spaces[t2].basis(d):
                        continue
                    M = self.matrix(n2, d) @ self.matrix(n1, d)
                    if not M.is_zero():
                        bad.append((n1, n2, d))
        return bad


def homology_complex(F: FrobeniusData, h: int, dq=None) -> GradedComplex:
    A = F.A
    hd = HochschildData(F, dq)
    layout = [("A", 0), ("VA", 0), ("A", 2), ("N", h), ("VN", h), ("N", h + 2), ("A", 2 * h), ("VA", 2 * h)]
    spaces = [invariant_basis(A, F, k, s) for k, s in layout]
    maps = [(k, k - 1, hd.differential(k)) for k in range(1, 8)]
    cx = GradedComplex(spaces, maps, [f"C{k}" for k in range(8)])
    cx.data = hd
    return cx


def cohomology_complex(F: FrobeniusData, h: int, dq=None) -> GradedComplex:
    """Cochain complex with the homology differentials reused (shifts in the layout).

    delta^0 = d2', delta^1 = d1', delta^2 = d6', delta^3 = d5', delta^4 = d4',
    delta^5 = d3', delta^6 = d2'.
    """
    A = F.A
    hd = HochschildData(F, dq)
    layout = [("A", 0), ("VA", -2), ("A", -2), ("N", -h), ("VN", -h - 2), ("N", -h - 2),
              ("A", -2 * h), ("VA", -2 * h - 2)]
    spaces = [invariant_basis(A, F, k, s) for k, s in layout]
    order = [2, 1, 6, 5, 4, 3, 2]
    maps = [(i, i + 1, hd.differential(k)) for i, k in enumerate(order)]
    cx = GradedComplex(spaces, maps, [f"C^{k}" for k in range(8)])
    cx.data = hd
    return cx


def hochschild_homology(cx: GradedComplex) -> dict[int, dict[int, int]]:
    return {i: cx.homology_at(i) for i in range(7)}


def hochschild_cohomology(cx: GradedComplex) -> dict[int, dict[int, int]]:
    return {i: cx.homology_at(i) for i in range(7)}


def center_direct(A: GradedAlgebra) -> dict[int, int]:
    """Graded dimension of {z : g z = z g for every e_i and every arrow g}."""
    gens = [{A.idempotent(i): Fraction(1)} for i in A.vertices]
    gens += [{A.generator_index(g.name): Fraction(1)} for g in A.generators]
    table = {}
    for d, ks in enumerate(A.degrees):
        rows: dict[int, list] = defaultdict(lambda: [Fraction(0)] * len(ks))
        nrow = 0
        for g in gens:
            for j, k in enumerate(ks):
                z = {k: Fraction(1)}
                comm = vadd(A.mul(g, z), A.mul(z, g), -1)
                for t, c in comm.items():
                    rows[(nrow, t)][j] = c
            nrow += 1
        M = list(rows.values())
        dim = len(ks) - exactlin.rank(M) if M else len(ks)
        if dim:
            table[d] = dim
    return table


def euler_check(cx: GradedComplex, table: dict) -> list[int]:
    """Degrees where sum (-1)^k dim C_k differs from sum (-1)^k dim HH_k plus rank d7."""
    bad = []
    for d in cx.all_degrees():
        lhs = sum((-1) ** k * len(cx.spaces[k].basis(d)) for k in range(7))
        rhs = sum((-1) ** k * table[k].get(d, 0) for k in range(7)) + cx.rank(6, d)
        if lhs != rhs:
            bad.append(d)
    return bad


# self-duality


def _form_matrix(F: FrobeniusData, S: GradedVectorSpaceBasis, ds: int,
                 T: GradedVectorSpaceBasis, dt: int) -> RationalMatrix:
    """[f(x y)] for x in S(ds), y in T(dt): the form on A x N."""
    rows, cols = S.basis(ds), T.basis(dt)
    return RationalMatrix(len(rows), len(cols),
                          [[F.pair({x: 1}, {y: 1}) for y in cols] for x in rows])


def _arrow_form_matrix(F: FrobeniusData, hd: HochschildData, S: GradedVectorSpaceBasis, ds: int,
                       T: GradedVectorSpaceBasis, dt: int) -> RationalMatrix:
    """(a (x) x, b (x) y) = delta_{a, b*} eps_a f(x y)."""
    rows, cols = S.basis(ds), T.basis(dt)
    m = []
    for a, x in rows:
        row = []
        for b, y in cols:
            row.append(hd.eps[a] * F.pair({x: 1}, {y: 1}) if hd.star[b] == a else Fraction(0))
        m.append(row)
    return RationalMatrix(len(rows), len(cols), m)


@dataclass
class DualityReport:
    entries: list  # (identity label, degree, holds)

    @property
    def ok(self) -> bool:
        return all(e[2] for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e[2]]


def check_self_duality(cx: GradedComplex, h: int) -> DualityReport:
    """Verify (d1')* = d5', (d2')* = -d4', (d3')* = d3' degree block by degree block.

    C_i in total degree D pairs with C_{5-i} in total degree 2h - D.
    """
    F, hd = cx.data.F, cx.data
    C = cx.spaces
    entries = []
    for D in range(0, 2 * h + 1):
        E = 2 * h - D
        # (d1')*: C1(D) x C4(E) vs C0(D) x C5(E)
        if C[1].basis(D) or C[5].basis(E):
            lhs = _arrow_form_matrix(F, hd, C[1], D, C[4], E) @ cx.matrix(4, E)
            rhs = cx.matrix(0, D).T @ _form_matrix(F, C[0], D, C[5], E)
            entries.append(("(d1')* = d5'", D, lhs == rhs))
        # (d2')*: C2(D) x C3(E) vs C1(D) x C4(E)
        if C[2].basis(D) or C[4].basis(E):
            lhs = _form_matrix(F, C[2], D, C[3], E) @ cx.matrix(3, E)
            rhs = -(cx.matrix(1, D).T @ _arrow_form_matrix(F, hd, C[1], D, C[4], E))
            entries.append(("(d2')* = -d4'", D, lhs == rhs))
        # (d3')*: C3(D) x C2(E) vs C2(D) x C3(E)
        if C[3].basis(D) or C[3].basis(E):
            lhs = _form_matrix(F, C[3], D, C[2], E) @ cx.matrix(2, E)
            rhs = cx.matrix(2, D).T @ _form_matrix(F, C[2], D, C[3], E)
            entries.append(("(d3')* = d3'", D, lhs == rhs))
    return DualityReport(entries)


# the bimodule resolution


class _Bimodule:
    """Basis of A (x)_R A or A (x)_R V (x)_R A in one total degree, split by left vertex."""

    def __init__(self, A: GradedAlgebra, kind: str, shift: int):
        self.kind, self.shift = kind, shift
        slots: dict[tuple[int, int], list] = defaultdict(list)
        if kind == "A":
            for k, b in enumerate(A.basis):
                slots[(b.degree + shift, b.source)].append(k)
        elif kind == "AA":
            for u, bu in enumerate(A.basis):
                for w, bw in enumerate(A.basis):
                    if bu.target == bw.source:
                        slots[(bu.degree + bw.degree + shift, bu.source)].append((u, w))
        elif kind == "AVA":
            for u, bu in enumerate(A.basis):
                for g in A.generators:
                    if g.source != bu.target:
                        continue
                    for w, bw in enumerate(A.basis):
                        if bw.source == g.target:
                            slots[(bu.degree + 1 + bw.degree + shift, bu.source)].append((u, g.name, w))
        else:
            raise ValueError(kind)
        self.slots = dict(slots)

    def keys(self):
        return set(self.slots)

    def basis(self, key):
        return self.slots.get(key, [])


def _tensor_add(out: dict, left: Vec, right: Vec, c, middle=None) -> None:
    for u, a in left.items():
        for w, b in right.items():
            key = (u, w) if middle is None else (u, middle, w)
            v = out.get(key, 0) + c * a * b
            if v:
                out[key] = v
            else:
                out.pop(key, None)


def resolution_maps(F: FrobeniusData, hd: HochschildData):
    A = F.A
    one = lambda k: {k: Fraction(1)}

    def d0(t):
        (u, w), = t
        return A.mul(one(u), one(w))

    def d1(t):
        (u, name, w), = t
        out = {}
        a = one(hd.gidx[name])
        _tensor_add(out, A.mul(one(u), a), one(w), 1)
        _tensor_add(out, one(u), A.mul(a, one(w)), -1)
        return out

    def d2(t):
        (u, w), = t
        out = {}
        for g in A.generators:
            a = one(hd.gidx[g.name])
            astar = one(hd.gidx[hd.star[g.name]])
            e = hd.eps[g.name]
            _tensor_add(out, A.mul(one(u), a), one(w), e, hd.star[g.name])
            _tensor_add(out, one(u), A.mul(astar, one(w)), e, g.name)
        return out

    def casimir_twisted(u, right):
        out = {}
        for xi, star in F.dual.items():
            left = A.mul(one(u), one(xi))
            if not left:
                continue
            r = A.mul(star, right)
            if r:
                _tensor_add(out, left, r, 1)
        return out

    def d3(t):
        # u (x) n -> sum_i u x_i (x) x_i^* eta(n)
        (u, n), = t
        return casimir_twisted(u, F.eta[n])

    def d4(t):
        (u, name, n), = t
        out = {}
        a = one(hd.gidx[name])
        _tensor_add(out, A.mul(one(u), a), one(n), 1)
        _tensor_add(out, one(u), A.mul(a, one(n)), -1)
        return out

    def d5(t):
        return d2(t)

    def d6(t):
        # u (x) w -> sum_i u x_i (x) x_i^* eta(w)
        (u, w), = t
        return casimir_twisted(u, F.eta[w])

    return [d0, d1, d2, d3, d4, d5, d6, d1]


@dataclass
class ResolutionReport:
    composites_zero: bool
    homology: dict  # node name -> {(degree, vertex): dim} for nonzero spots

    @property
    def exact(self) -> bool:
        return self.composites_zero and not any(self.homology.values())


def check_resolution_exact(F: FrobeniusData, h: int, dq=None,
                           limit: int = RESOLUTION_DIM_LIMIT) -> ResolutionReport:
    """Build A <- P0 <- ... <- P7 and test exactness at A and P0..P6."""
    A = F.A
    if A.dim > limit:
        raise ResolutionTooLarge(f"dim A = {A.dim} exceeds the resolution limit {limit}")
    hd = HochschildData(F, dq)
    layout = [("A", 0), ("AA", 0), ("AVA", 0), ("AA", 2), ("AA", h), ("AVA", h), ("AA", h + 2),
              ("AA", 2 * h), ("AVA", 2 * h)]
    names = ["A", "P0", "P1", "P2", "P3", "P4", "P5", "P6", "P7"]
    spaces = [_Bimodule(A, k, s) for k, s in layout]
    fns = resolution_maps(F, hd)
    # maps[n]: spaces[n+1] -> spaces[n]

    def matrix(n, key):
        src, tgt = spaces[n + 1], spaces[n]
        cols, rows = src.basis(key), tgt.basis(key)
        pos = {s: i for i, s in enumerate(rows)}
        m = [[Fraction(0)] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for t, c in fns[n]({s: 1}).items():
                if t not in pos:
                    raise AssertionError(f"{names[n+1]} -> {names[n]}: image outside target at {t}")
                m[pos[t]][j] = c
        return RationalMatrix(len(rows), len(cols), m)

    keys = set()
    for sp in spaces:
        keys |= sp.keys()
    ranks = {}
    mats = {}
    for n in range(len(fns)):
        for key in keys:
            if spaces[n].basis(key) and spaces[n + 1].basis(key):
                mats[(n, key)] = matrix(n, key)
                ranks[(n, key)] = exactlin.rank(mats[(n, key)])
            else:
                ranks[(n, key)] = 0
    composites_zero = True
    for n in range(len(fns) - 1):
        for key in keys:
            if (n, key) in mats and (n + 1, key) in mats:
                if not (mats[(n, key)] @ mats[(n + 1, key)]).is_zero():
                    composites_zero = False
    homology = {}
    for p in range(0, len(spaces) - 1):
        bad = {}
        for key in sorted(keys):
            dim = len(spaces[p].basis(key))
            if p > 0:
                dim -= ranks[(p - 1, key)]
            dim -= ranks[(p, key)]
            if dim:
                bad[key] = dim
        homology[names[p]] = bad
    return ResolutionReport(composites_zero, homology)
