"""Quivers, doubled quivers and elements of the free path algebra.

Paths compose left to right: for p: i -> j and q: j -> k the product pq is
the path i -> k that runs p first. A path is stored as (source, arrows);
the trivial path e_i is (i, ()).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .rootdata import RootDatum


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")

    @classmethod
    def from_root_datum(cls, rd: RootDatum) -> "Quiver":
        arrows = tuple(Arrow(f"a{s}_{t}", s, t) for s, t in rd.edges)
        return cls(rd.vertices, arrows)


@dataclass(frozen=True)
class DoubleQuiver:
    quiver: Quiver
    arrows: tuple[Arrow, ...]
    star: dict = field(hash=False)
    eps: dict = field(hash=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.quiver.vertices

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    def out_of(self, i: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == i]

    def into(self, j: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == j]


def double(q: Quiver) -> DoubleQuiver:
    arrows, star, eps = [], {}, {}
    for a in q.arrows:
        b = Arrow(a.name + "*", a.target, a.source)
        arrows += [a, b]
        star[a.name], star[b.name] = b.name, a.name
        eps[a.name], eps[b.name] = 1, -1
    return DoubleQuiver(q, tuple(arrows), star, eps)


Path = tuple  # (source, tuple of arrow names)


class PathVector:
    """Finite linear combination of composable paths, exact coefficients."""

    __slots__ = ("dq", "terms")

    def __init__(self, dq: DoubleQuiver, terms: Mapping[Path, object] | None = None):
        self.dq = dq
        self.terms: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            self._check(p)
            c = Fraction(c)
            if c:
                self.terms[p] = self.terms.get(p, Fraction(0)) + c
                if not self.terms[p]:
                    del self.terms[p]

    def _check(self, p: Path) -> None:
        v = p[0]
        for name in p[1]:
            a = self.dq.arrow(name)
            if a.source != v:
                raise ValueError(f"path {p} is not composable")
            v = a.target

    def target_of(self, p: Path) -> int:
        return self.dq.arrow(p[1][-1]).target if p[1] else p[0]

    @classmethod
    def idempotent(cls, dq: DoubleQuiver, i: int) -> "PathVector":
        return cls(dq, {(i, ()): 1})

    @classmethod
    def unit(cls, dq: DoubleQuiver) -> "PathVector":
        return cls(dq, {(i, ()): 1 for i in dq.vertices})

    @classmethod
    def arrow(cls, dq: DoubleQuiver, name: str) -> "PathVector":
        a = dq.arrow(name)
        return cls(dq, {(a.source, (name,)): 1})

    def __add__(self, other: "PathVector") -> "PathVector":
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return PathVector(self.dq, t)

    def __neg__(self):
        return PathVector(self.dq, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PathVector":
        return PathVector(self.dq, {p: c * x for p, x in self.terms.items()})

    def __mul__(self, other: "PathVector") -> "PathVector":
        return path_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, PathVector) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (s, arrows), c in sorted(self.terms.items()):
            word = "*".join(arrows) if arrows else f"e{s}"
            parts.append(f"{c}*{word}")
        return " + ".join(parts)

    def degree_parts(self) -> dict[int, "PathVector"]:
        out: dict[int, dict] = defaultdict(dict)
        for p, c in self.terms.items():
            out[len(p[1])][p] = c
        return {d: PathVector(self.dq, t) for d, t in out.items()}


def path_mul(x: PathVector, y: PathVector) -> PathVector:
    out: dict[Path, Fraction] = {}
    for p, c in x.terms.items():
        t = x.target_of(p)
        for q, d in y.terms.items():
            if q[0] != t:
                continue
            key = (p[0], p[1] + q[1])
            out[key] = out.get(key, 0) + c * d
    return PathVector(x.dq, out)


def bracket(x: PathVector, y: PathVector) -> PathVector:
    return x * y - y * x


def preprojective_relation(dq: DoubleQuiver, i: int) -> PathVector:
    """rho_i = e_i (sum over all arrows a of eps_a a a*) e_i."""
    return PathVector(dq, {(i, (a.name, dq.star[a.name])): dq.eps[a.name] for a in dq.out_of(i)})


def quadratic_terms(rel: PathVector) -> list[tuple[str, str, Fraction]]:
    """The (first arrow, second arrow, coefficient) triples of a length-2 element."""
    out = []
    for (s, arrows), c in sorted(rel.terms.items()):
        if len(arrows) != 2:
            raise ValueError("not a homogeneous quadratic element")
        out.append((arrows[0], arrows[1], c))
    return out


def enumerate_paths(dq: DoubleQuiver, length: int) -> list[Path]:
    """All paths of exactly the given length (used by brute-force checks)."""
    paths = [(i, ()) for i in dq.vertices]
    for _ in range(length):
        nxt = []
        for s, arrows in paths:
            t = dq.arrow(arrows[-1]).target if arrows else s
            for a in dq.out_of(t):
                nxt.append((s, arrows + (a.name,)))
        paths = nxt
    return paths


def path_count(adjacency, length: int) -> int:
    """Number of paths of a given length in the double quiver, from powers of C."""
    r = adjacency.rows
    C = [[int(adjacency[i, j]) for j in range(r)] for i in range(r)]
    v = [1] * r
    for _ in range(length):
        v = [sum(C[i][j] * v[j] for j in range(r)) for i in range(r)]
    return sum(v)
