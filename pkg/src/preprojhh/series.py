"""Truncated power series in one variable over the rationals.

``TruncatedSeries`` holds coefficients of t^0..t^N; ``MatrixSeries`` holds
N+1 square ``RationalMatrix`` coefficients. Binary operations between
operands of different orders truncate to the smaller order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import RationalMatrix, ShapeError, inverse as mat_inverse


def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) > self.order + 1:
            c = c[: self.order + 1]
        c = c + (Fraction(0),) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_dict(cls, terms: dict[int, object], order: int) -> "TruncatedSeries":
        c = [0] * (order + 1)
        for d, x in terms.items():
            if d < 0:
                raise ValueError("negative exponents are not stored")
            if d <= order:
                c[d] += x
        return cls(order, tuple(c))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, (1,))

    @classmethod
    def monomial(cls, d: int, order: int, c=1) -> "TruncatedSeries":
        return cls.from_dict({d: c}, order)

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d <= self.order else Fraction(0)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def _align(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(self.order, (other,))
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other):
        a, b, n = self._align(other)
        return TruncatedSeries(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries(self.order, tuple(c * x for x in self.coeffs))
        a, b, n = self._align(other)
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(n + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return TruncatedSeries(n, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute_power(self, s: int) -> "TruncatedSeries":
        """The series F(t^s), kept at the same order."""
        out = {}
        for d, x in enumerate(self.coeffs):
            if x and d * s <= self.order:
                out[d * s] = x
        return TruncatedSeries.from_dict(out, self.order)

    def terms(self) -> dict[int, Fraction]:
        return {d: x for d, x in enumerate(self.coeffs) if x}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return render_sparse(self.terms())

    def to_json(self) -> list[str]:
        return [fmt_rational(x) for x in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "TruncatedSeries":
        return cls(len(data) - 1, tuple(parse_rational(s) for s in data))


def render_sparse(terms: dict[int, object], var: str = "t") -> str:
    """Render ``{4: 1, 0: 1}`` as ``1 + t^4``."""
    parts = []
    for d in sorted(terms):
        c = Fraction(terms[d])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if d == 0:
            body = fmt_rational(mag)
        else:
            mon = var if d == 1 else f"{var}^{d}"
            body = mon if mag == 1 else f"{fmt_rational(mag)}*{mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    c0 = a.coeffs[0]
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = a.order
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / c0
    for k in range(1, n + 1):
        s = sum((a.coeffs[j] * inv[k - j] for j in range(1, k + 1) if a.coeffs[j]), Fraction(0))
        inv[k] = -s / c0
    return TruncatedSeries(n, tuple(inv))


def binomial_power(k: int, exponent, order: int) -> TruncatedSeries:
    """(1 - t^k)^exponent for any rational exponent."""
    e = Fraction(exponent)
    out = {0: Fraction(1)}
    coef = Fraction(1)
    n = 1
    while n * k <= order:
        coef = coef * (e - (n - 1)) / n
        if not coef:
            break
        out[n * k] = coef * (-1) ** n
        n += 1
    return TruncatedSeries.from_dict(out, order)


def product_exponents(F: TruncatedSeries, N: int | None = None) -> list[Fraction]:
    """Exponents a_1..a_N with prod_k (1 - t^k)^(-a_k) = F mod t^(N+1).

    Returned list is indexed from 0 with a[0] unused (always 0).
    """
    if N is None:
        N = F.order
    if N > F.order:
        raise ValueError("requested more exponents than the series order allows")
    if F.coeffs[0] != 1:
        raise ValueError("constant term must be 1")
    G = F.truncate(N)
    a = [Fraction(0)] * (N + 1)
    for k in range(1, N + 1):
        ak = G[k]
        a[k] = ak
        if ak:
            G = G * binomial_power(k, ak, N)
    return a


def exponents_product(a: Sequence, N: int) -> TruncatedSeries:
    """Inverse of ``product_exponents``: prod_{k<=N} (1 - t^k)^(-a_k)."""
    out = TruncatedSeries.one(N)
    for k in range(1, min(N, len(a) - 1) + 1):
        if a[k]:
            out = out * binomial_power(k, -Fraction(a[k]), N)
    return out


@dataclass(frozen=True)
class MatrixSeries:
    order: int
    size: int
    coeffs: tuple  # of RationalMatrix

    def __post_init__(self):
        cs = list(self.coeffs)[: self.order + 1]
        for m in cs:
            if m.shape != (self.size, self.size):
                raise ShapeError("matrix coefficient of wrong size")
        cs += [RationalMatrix.zeros(self.size, self.size)] * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, M: RationalMatrix, order: int) -> "MatrixSeries":
        return cls(order, M.rows, (M,))

    @classmethod
    def identity(cls, size: int, order: int) -> "MatrixSeries":
        return cls.constant(RationalMatrix.identity(size), order)

    @classmethod
    def from_terms(cls, terms: dict[int, RationalMatrix], size: int, order: int) -> "MatrixSeries":
        z = RationalMatrix.zeros(size, size)
        cs = [z] * (order + 1)
        for d, M in terms.items():
            if d <= order:
                cs[d] = cs[d] + M
        return cls(order, size, tuple(cs))

    def __getitem__(self, d: int) -> RationalMatrix:
        return self.coeffs[d]

    def entry(self, i: int, j: int) -> TruncatedSeries:
        return TruncatedSeries(self.order, tuple(M[i, j] for M in self.coeffs))

    def _check(self, other: "MatrixSeries") -> int:
        if self.size != other.size:
            raise ShapeError("matrix series of different sizes")
        return min(self.order, other.order)

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        n = self._check(other)
        return MatrixSeries(n, self.size, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __neg__(self):
        return MatrixSeries(self.order, self.size, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "MatrixSeries") -> "MatrixSeries":
        n = self._check(other)
        z = RationalMatrix.zeros(self.size, self.size)
        out = []
        nz_a = [(i, A) for i, A in enumerate(self.coeffs[: n + 1]) if not A.is_zero()]
        nz_b = [(j, B) for j, B in enumerate(other.coeffs[: n + 1]) if not B.is_zero()]
        acc = [z] * (n + 1)
        for i, A in nz_a:
            for j, B in nz_b:
                if i + j <= n:
                    acc[i + j] = acc[i + j] + A @ B
        out = acc
        return MatrixSeries(n, self.size, tuple(out))

    def is_zero(self) -> bool:
        return all(M.is_zero() for M in self.coeffs)

    def to_json(self) -> list:
        return [[[fmt_rational(x) for x in row] for row in M.entries] for M in self.coeffs]


def matrix_inverse(M: MatrixSeries) -> MatrixSeries:
    """W with M W = I mod t^(N+1); needs an invertible constant term."""
    W0 = mat_inverse(M.coeffs[0])
    n = M.order
    W = [W0]
    for k in range(1, n + 1):
        acc = RationalMatrix.zeros(M.size, M.size)
        for j in range(1, k + 1):
            if not M.coeffs[j].is_zero():
                acc = acc + M.coeffs[j] @ W[k - j]
        W.append(-(W0 @ acc))
    return MatrixSeries(n, M.size, tuple(W))


def matrix_series_det(M: MatrixSeries) -> TruncatedSeries:
    """Determinant in the commutative ring of truncated series.

    Uses elimination with unit pivots when the constant term is invertible
    and falls back to Laplace expansion over column subsets otherwise.
    """
    r, n = M.size, M.order
    a = [[M.entry(i, j) for j in range(r)] for i in range(r)]
    det_c0 = None
    try:
        mat_inverse(M.coeffs[0])
        det_c0 = True
    except ZeroDivisionError:
        det_c0 = False
    if not det_c0:
        return _laplace_det(a, n)
    result = TruncatedSeries.one(n)
    for c in range(r):
        piv = next(i for i in range(c, r) if a[i][c][0])
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        p = a[c][c]
        result = result * p
        pinv = inverse(p)
        for i in range(c + 1, r):
            if a[i][c].is_zero():
                continue
            m = a[i][c] * pinv
            a[i] = [x - m * y for x, y in zip(a[i], a[c])]
    return result


def _laplace_det(a, n: int) -> TruncatedSeries:
    r = len(a)
    memo: dict[int, TruncatedSeries] = {0: TruncatedSeries.one(n)}
    # memo[mask]: determinant of rows 0..|mask|-1 restricted to the columns in mask
    for mask in sorted(range(1, 1 << r), key=lambda m: bin(m).count("1")):
        row = bin(mask).count("1") - 1
        total = TruncatedSeries(n, ())
        sign = 1
        for c in range(r - 1, -1, -1):
            if mask >> c & 1:
                if not a[row][c].is_zero():
                    sub = memo[mask & ~(1 << c)]
                    if not sub.is_zero():
                        term = a[row][c] * sub
                        total = total + (term if sign > 0 else -term)
                sign = -sign
        memo[mask] = total
    return memo[(1 << r) - 1]

