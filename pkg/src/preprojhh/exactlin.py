"""Dense linear algebra over the rationals.

Everything here is exact. Elimination clears denominators row by row and
runs on Python integers, dividing each row by the gcd of its entries as it
goes; only the final reduced form is converted back to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class ShapeError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Immutable dense matrix with ``Fraction`` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError(f"entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(_q(x) for x in r) for r in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              [[self.entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    T = property(transpose)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return RationalMatrix(self.rows, self.cols,
                              [[a + b for a, b in zip(r, s)]
                               for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = _q(c)
        return RationalMatrix(self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in ocols])
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        return [sum((a * _q(x) for a, x in zip(r, v) if a and x), Fraction(0))
                for r in self.entries]

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def tolists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def _as_rows(M) -> tuple[list[list], int]:
    if isinstance(M, RationalMatrix):
        return [list(r) for r in M.entries], M.cols
    rows = [list(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def _integer_row(row: Iterable) -> list[int]:
    row = [_q(x) for x in row]
    den = lcm(*(x.denominator for x in row)) if row else 1
    out = [int(x * den) for x in row]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def _echelon_int(rows: list[list[int]], ncols: int, reduce_above: bool):
    """Integer Gaussian elimination in place; returns pivot columns.

    Rows are kept primitive (gcd 1) to stop entries from growing.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x and (best is None or abs(x) < best):
                piv, best = i, abs(x)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        targets = range(nrows) if reduce_above else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            x = row[c]
            if not x:
                continue
            g = gcd(p, x)
            a, b = p // g, x // g
            new = [a * u - b * v for u, v in zip(row, prow)]
            h = 0
            for y in new:
                if y:
                    h = gcd(h, y)
                    if h == 1:
                        break
            if h > 1:
                new = [y // h for y in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    return pivots


def rref(M) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    rows, ncols = _as_rows(M)
    nrows = len(rows)
    irows = [_integer_row(r) for r in rows]
    pivots = _echelon_int(irows, ncols, reduce_above=True)
    out = []
    for k, c in enumerate(pivots):
        p = irows[k][c]
        out.append([Fraction(x, p) for x in irows[k]])
    out.extend([[Fraction(0)] * ncols for _ in range(nrows - len(pivots))])
    return RationalMatrix(nrows, ncols, out), pivots


def rank(M) -> int:
    rows, ncols = _as_rows(M)
    if not rows or not ncols:
        return 0
    irows = [_integer_row(r) for r in rows if any(r)]
    return len(_echelon_int(irows, ncols, reduce_above=False))


def nullspace_basis(M) -> RationalMatrix:
    """Columns of the returned matrix form a basis of ker M."""
    rows, ncols = _as_rows(M)
    R, pivots = rref(RationalMatrix(len(rows), ncols, rows)) if rows else (None, [])
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    cols = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -R.entries[k][f]
        cols.append(v)
    if not cols:
        return RationalMatrix(ncols, 0, [[] for _ in range(ncols)])
    return RationalMatrix(ncols, len(cols), [list(r) for r in zip(*cols)])


def solve(M, b) -> list[Fraction] | None:
    """One solution of ``M x = b``, or ``None`` when the system is inconsistent.

    Shape problems raise ``ShapeError``.
    """
    rows, ncols = _as_rows(M)
    if len(b) != len(rows):
        raise ShapeError("right-hand side length does not match row count")
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    R, pivots = rref(RationalMatrix(len(aug), ncols + 1, aug)) if aug else (None, [])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for k, c in enumerate(pivots):
        x[c] = R.entries[k][ncols]
    return x


def inverse(M) -> RationalMatrix:
    rows, n = _as_rows(M)
    if len(rows) != n:
        raise ShapeError("inverse of a non-square matrix")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    if n == 0:
        return RationalMatrix(0, 0, [])
    R, pivots = rref(RationalMatrix(n, 2 * n, aug))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RationalMatrix(n, n, [list(R.entries[i][n:]) for i in range(n)])


def det(M) -> Fraction:
    rows, n = _as_rows(M)
    if len(rows) != n:
        raise ShapeError("determinant of a non-square matrix")
    a = [[_q(x) for x in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        p = a[c][c]
        d *= p
        for i in range(c + 1, n):
            if a[i][c]:
                m = a[i][c] / p
                a[i] = [x - m * y for x, y in zip(a[i], a[c])]
    return d
