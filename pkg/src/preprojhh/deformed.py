"""The deformed algebra A_lam = P(Qbar) / (sum_a [a, a*] = sum_i lam_i e_i).

Filtered dimension bounds. Let S_d be the span of paths of length <= d and

    I'_D = span{ p (rho_i - lam_i e_i) q : len p + len q + 2 <= D }.

The bound d_D = dim S_{h-2} - dim(I'_D cap S_{h-2}) is computed without
enumerating free paths. Homogenize with a central degree-1 variable z,
i.e. add a loop z_i at every vertex with z_i a = a z_j. The relations
rho_i - lam_i z_i z_i and z_i a - a z_j are quadratic, so

    B = k<Qbar, z> / (rho_i - lam_i z_i^2, z_i a - a z_j)

is built degree by degree like A. Dehomogenizing identifies B_D with S_D
modulo I'_D, and I'_D cap S_{h-2} with the kernel of multiplication by
z^(D-h+2) on B_{h-2}. So d_D is the rank of z^(D-h+2): B_{h-2} -> B_D.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import exactlin
from .pathalg import Arrow, DoubleQuiver, path_count
from .preproj import GradedAlgebra, Relation, vadd
from .rootdata import RootDatum


@dataclass(frozen=True)
class Weight:
    values: dict  # vertex -> Fraction

    def __getitem__(self, i):
        return self.values[i]

    def negate(self) -> "Weight":
        return Weight({i: -v for i, v in self.values.items()})

    def is_antiinvariant(self, nu: dict) -> bool:
        return all(self.values[nu[i]] == -self.values[i] for i in self.values)


def parse_weight(text: str, rd: RootDatum) -> Weight:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != rd.r:
        raise ValueError(f"expected {rd.r} weight entries, got {len(parts)}")
    w = Weight({v: Fraction(p) for v, p in zip(rd.vertices, parts)})
    if not w.is_antiinvariant(rd.nu):
        raise ValueError("weight must satisfy lam_nu(i) = -lam_i")
    return w


def zero_weight(rd: RootDatum) -> Weight:
    return Weight({i: Fraction(0) for i in rd.vertices})


def random_generic_weight(rd: RootDatum, seed: int) -> Weight:
    """Distinct nonzero integers on one vertex of each nu-orbit of size two."""
    rng = random.Random(seed)
    pairs = [i for i in rd.vertices if i < rd.nu[i]]
    pool = [c for c in range(-9, 10) if c]
    picks = rng.sample(pool, len(pairs)) if pairs else []
    # avoid +-c repeats across pairs so the entries stay distinct up to sign
    while len({abs(c) for c in picks}) < len(picks):
        picks = rng.sample(pool, len(pairs))
    vals = {i: Fraction(0) for i in rd.vertices}
    for i, c in zip(pairs, picks):
        vals[i], vals[rd.nu[i]] = Fraction(c), Fraction(-c)
    return Weight(vals)


def homogenized_algebra(dq: DoubleQuiver, lam: Weight) -> GradedAlgebra:
    loops = [Arrow(f"z{i}", i, i) for i in dq.vertices]
    gens = list(dq.arrows) + loops
    rels = []
    for i in dq.vertices:
        terms = [(a.name, dq.star[a.name], Fraction(dq.eps[a.name])) for a in dq.out_of(i)]
        if lam[i]:
            terms.append((f"z{i}", f"z{i}", -Fraction(lam[i])))
        rels.append(Relation(i, tuple(terms)))
    for a in dq.arrows:
        rels.append(Relation(a.source, ((f"z{a.source}", a.name, Fraction(1)),
                                        (a.name, f"z{a.target}", Fraction(-1)))))
    return GradedAlgebra(dq.vertices, gens, rels, "homogenized")


@dataclass
class FilteredDimensionTrace:
    values: dict                 # D -> d_D
    stabilized: int | None
    stabilized_at: int | None
    window: int = 3

    @property
    def non_increasing(self) -> bool:
        ds = [self.values[D] for D in sorted(self.values)]
        return all(x >= y for x, y in zip(ds, ds[1:]))


def _times_z(B: GradedAlgebra, v: dict) -> dict:
    out: dict = {}
    for i in B.vertices:
        part = {k: c for k, c in v.items() if B.basis[k].target == i}
        if part:
            vadd(out, B.right_apply(part, f"z{i}"))
    return out


def deformed_dimension(dq: DoubleQuiver, lam: Weight, h: int, Dmax: int | None = None,
                       window: int = 3) -> FilteredDimensionTrace:
    top = h - 2
    if Dmax is None:
        Dmax = 2 * h
    if Dmax < top:
        raise ValueError("Dmax must be at least h-2")
    B = homogenized_algebra(dq, lam)
    B._init_low_degrees()
    B.extend_to(Dmax)
    images = [{k: Fraction(1)} for k in B.degrees[top]] if top < len(B.degrees) else []
    values = {}
    for D in range(top, Dmax + 1):
        if D > top:
            images = [_times_z(B, v) for v in images]
        blocks: dict = {}
        for v in images:
            if not v:
                continue
            k0 = next(iter(v))
            key = (B.basis[k0].source, B.basis[k0].target)
            blocks.setdefault(key, []).append(v)
        rank = 0
        for key, vecs in blocks.items():
            cols = sorted({k for v in vecs for k in v})
            pos = {k: n for n, k in enumerate(cols)}
            rows = [[0] * len(cols) for _ in vecs]
            for row, v in zip(rows, vecs):
                for k, c in v.items():
                    row[pos[k]] = c
            rank += exactlin.rank(rows)
        values[D] = rank
    stab = stab_at = None
    Ds = sorted(values)
    for n in range(len(Ds) - window + 1):
        run = [values[Ds[n + k]] for k in range(window)]
        if len(set(run)) == 1:
            stab, stab_at = run[0], Ds[n]
            break
    return FilteredDimensionTrace(values, stab, stab_at, window)


def brute_force_trace(dq: DoubleQuiver, lam: Weight, h: int, Dmax: int) -> dict:
    """d_D straight from the definition, enumerating all paths up to length D.

    Only for tiny quivers; used to cross-check ``deformed_dimension``.
    """
    from .pathalg import PathVector, enumerate_paths, preprojective_relation
    top = h - 2
    out = {}
    for D in range(top, Dmax + 1):
        paths = [p for L in range(D + 1) for p in enumerate_paths(dq, L)]
        idx = {p: n for n, p in enumerate(paths)}
        gens = []
        for i in dq.vertices:
            g = preprojective_relation(dq, i) - PathVector.idempotent(dq, i).scale(lam[i])
            gens.append(g)
        rows = []
        # all p g q with len p + len q <= D - 2
        short = [p for L in range(D - 1) for p in enumerate_paths(dq, L)]
        for g in gens:
            for p in short:
                left = PathVector(dq, {p: 1}) * g
                if not left.terms:
                    continue
                for q in short:
                    if len(p[1]) + len(q[1]) > D - 2:
                        continue
                    el = left * PathVector(dq, {q: 1})
                    if el.terms:
                        row = [0] * len(paths)
                        for path, c in el.terms.items():
                            row[idx[path]] = c
                        rows.append(row)
        low = [n for n, p in enumerate(paths) if len(p[1]) <= top]
        high = [n for n, p in enumerate(paths) if len(p[1]) > top]
        dim_ideal = exactlin.rank(rows) if rows else 0
        proj = [[r[n] for n in high] for r in rows]
        dim_high = exactlin.rank(proj) if proj and high else 0
        out[D] = len(low) - (dim_ideal - dim_high)
    return out


def check_flatness(rd: RootDatum, lam: Weight, trace: FilteredDimensionTrace) -> bool:
    return trace.stabilized is not None and trace.stabilized == rd.dim_algebra()


def rigidity_check(rd: RootDatum, hh2: dict) -> bool:
    """HH^2 vanishes exactly when nu = id, and in general is r_minus copies in degree -2."""
    nu_trivial = all(rd.nu[i] == i for i in rd.vertices)
    vanishes = not any(hh2.values())
    expected = {-2: rd.r_minus} if rd.r_minus else {}
    return (nu_trivial == vanishes) and {d: v for d, v in hh2.items() if v} == expected


def typeA_dimension_identity(n: int) -> bool:
    """n(n+1)(n+2)/6 equals the sum of k^2 over k = n, n-2, ... (down to 1 or 2)."""
    if n < 1:
        raise ValueError("n must be positive")
    return n * (n + 1) * (n + 2) // 6 == sum(k * k for k in range(n, 0, -2))


def free_path_estimate(rd: RootDatum, length: int | None = None) -> int:
    """Number of paths of length 2h in the double quiver (size of a naive computation)."""
    return path_count(rd.adjacency, 2 * rd.h if length is None else length)
