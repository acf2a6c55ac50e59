"""Classification data for simply-laced Dynkin types.

Exponents and the Coxeter number are not tabulated. The Coxeter element
c = s_1 s_2 ... s_r is built as an integer matrix; h is its order, and its
characteristic polynomial factors into cyclotomic polynomials Phi_d (d | h),
each contributing the exponents (h/d)*k with gcd(k, d) = 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .exactlin import RationalMatrix


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        n = self.rank
        ok = (fam == "A" and n >= 1) or (fam == "D" and n >= 4) or (fam == "E" and n in (6, 7, 8))
        if not ok:
            raise ValueError(f"no simply-laced Dynkin type {fam}{n}")

    @classmethod
    def parse(cls, label: str) -> "ADEType":
        m = re.fullmatch(r"\s*([AaDdEe])_?(\d+)\s*", label)
        if not m:
            raise ValueError(f"cannot parse type label {label!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.label


def dynkin_edges(t: ADEType) -> list[tuple[int, int]]:
    """Edges of the diagram, oriented the way the quiver Q is oriented."""
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if t.family == "D":
        # chain 1-2-...-(n-2), tips n-1 and n attached to the fork n-2
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 1, n - 2), (n, n - 2)]
    # Bourbaki: 1-3-4-5-...-n with 2 hanging off 4; arrows point at 4
    edges = [(1, 3), (3, 4), (2, 4), (5, 4)]
    edges += [(k + 1, k) for k in range(5, n)]
    return edges


def nu_table(t: ADEType) -> dict[int, int]:
    n = t.rank
    nu = {i: i for i in range(1, n + 1)}
    if t.family == "A":
        nu = {i: n + 1 - i for i in range(1, n + 1)}
    elif t.family == "D" and n % 2 == 1:
        nu[n - 1], nu[n] = n, n - 1
    elif t.family == "E" and n == 6:
        nu.update({1: 6, 6: 1, 3: 5, 5: 3})
    return nu


def _int_matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def coxeter_element(cartan: list[list[int]]) -> list[list[int]]:
    """Matrix of s_1 s_2 ... s_r on the root lattice (simple-root coordinates)."""
    r = len(cartan)
    c = [[int(i == j) for j in range(r)] for i in range(r)]
    for i in range(r):
        # s_i(alpha_j) = alpha_j - <alpha_i^vee, alpha_j> alpha_i
        s = [[int(a == b) for b in range(r)] for a in range(r)]
        for j in range(r):
            s[i][j] -= cartan[i][j]
        c = _int_matmul(c, s)
    return c


def _charpoly(m: list[list[int]]) -> list[int]:
    """Characteristic polynomial det(xI - m), low degree first (Faddeev-LeVerrier)."""
    from fractions import Fraction
    n = len(m)
    M = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        base = [[Mk[i][j] + coeffs[n - k + 1] * I[i][j] for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * base[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def _poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef, rem = divmod(a[k + len(b) - 1], lead)
        if rem:
            raise ArithmeticError("non-integral polynomial division")
        q[k] = coef
        if coef:
            for i, bi in enumerate(b):
                a[k + i] -= coef * bi
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a[: max(len(b) - 1, 1)]


def cyclotomic(d: int) -> list[int]:
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly, rem = _poly_divmod(poly, cyclotomic(e))
            assert not any(rem)
    return poly


def exponents_from_coxeter(cox: list[list[int]]) -> tuple[int, list[int]]:
    r = len(cox)
    ident = [[int(i == j) for j in range(r)] for i in range(r)]
    p, h = cox, 1
    while p != ident:
        p = _int_matmul(p, cox)
        h += 1
        if h > 10 * r + 10:
            raise ArithmeticError("Coxeter element of unexpectedly large order")
    chi = _charpoly(cox)
    exps: list[int] = []
    for d in sorted(e for e in range(1, h + 1) if h % e == 0):
        phi = cyclotomic(d)
        while len(chi) >= len(phi):
            q, rem = _poly_divmod(chi, phi)
            if any(rem):
                break
            chi = q
            exps.extend((h // d) * k for k in range(d) if gcd(k, d) == 1)
    if chi != [1]:
        raise ArithmeticError("characteristic polynomial is not a product of cyclotomics")
    return h, sorted(exps)


@dataclass(frozen=True)
class RootDatum:
    type: ADEType
    r: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    adjacency: RationalMatrix
    exponents: tuple[int, ...]
    h: int
    nu: dict = field(hash=False)
    P: RationalMatrix = field(hash=False)
    r_plus: int = 0
    r_minus: int = 0

    @property
    def cartan(self) -> RationalMatrix:
        return RationalMatrix.identity(self.r).scale(2) - self.adjacency

    def count_exponent(self, pred) -> int:
        return sum(1 for m in self.exponents if pred(m))

    def dim_algebra(self) -> int:
        return self.r * self.h * (self.h + 1) // 6

    def check(self) -> None:
        m, h, r = self.exponents, self.h, self.r
        assert h == m[-1] + 1
        assert all(m[i] + m[r - 1 - i] == h for i in range(r))
        assert 2 * sum(m) == r * h
        assert all(self.nu[self.nu[i]] == i for i in self.vertices)
        P, C = self.P, self.adjacency
        assert P @ P == RationalMatrix.identity(r)
        assert P @ C == C @ P
        assert self.r_plus + self.r_minus == r


def root_datum(t: ADEType | str) -> RootDatum:
    if isinstance(t, str):
        t = ADEType.parse(t)
    r = t.rank
    edges = dynkin_edges(t)
    adj = [[0] * r for _ in range(r)]
    for i, j in edges:
        adj[i - 1][j - 1] += 1
        adj[j - 1][i - 1] += 1
    cartan = [[2 * int(i == j) - adj[i][j] for j in range(r)] for i in range(r)]
    h, exps = exponents_from_coxeter(coxeter_element(cartan))
    nu = nu_table(t)
    P = [[int(nu[j + 1] == i + 1) for j in range(r)] for i in range(r)]
    fixed = sum(1 for i in nu if nu[i] == i)
    r_minus = (r - fixed) // 2
    rd = RootDatum(
        type=t, r=r, vertices=tuple(range(1, r + 1)), edges=tuple(edges),
        adjacency=RationalMatrix(r, r, adj), exponents=tuple(exps), h=h,
        nu=dict(nu), P=RationalMatrix(r, r, P), r_plus=r - r_minus, r_minus=r_minus,
    )
    rd.check()
    return rd


SMALL_SUITE = ("A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6")
FULL_EXTRA = ("A6", "A7", "A8", "D6", "D7", "E7", "E8")
