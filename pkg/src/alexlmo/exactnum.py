"""Exact rational power series in h and symmetric Laurent polynomials in t.

Everything here works over :class:`fractions.Fraction`; no floats are used.
A :class:`TruncatedSeries` carries its truncation order ``N`` and only ever
reports coefficients of ``h^0 .. h^N``.  Mixed-order arithmetic truncates to
the smaller order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class SeriesDomainError(ValueError):
    """Raised when log/exp/inverse are applied outside their domain."""


class LaurentError(ValueError):
    """Raised for asymmetric or badly normalized Laurent polynomials."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``sum c_k h^k`` known up to and including ``h^order``."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        cs = [as_fraction(c) for c in self.coeffs[: self.order + 1]]
        cs.extend([Fraction(0)] * (self.order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> "TruncatedSeries":
        return cls(tuple(coeffs), order)

    @classmethod
    def constant(cls, c: Number, order: int) -> "TruncatedSeries":
        return cls((c,), order)

    @classmethod
    def monomial(cls, c: Number, power: int, order: int) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = c
        return cls(tuple(cs), order)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient h^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(as_fraction(other), self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            q = as_fraction(other)
            return TruncatedSeries(tuple(q * c for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return TruncatedSeries(tuple(out), n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesDomainError("series with zero constant term is not invertible")
        a = self.coeffs
        q = [1 / c0]
        for n in range(1, self.order + 1):
            s = sum((a[k] * q[n - k] for k in range(1, n + 1)), Fraction(0))
            q.append(-s / c0)
        return TruncatedSeries(tuple(q), self.order)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / as_fraction(other))

    def derivative(self) -> "TruncatedSeries":
        # the top coefficient is unknown after differentiation
        n = max(self.order - 1, 0)
        cs = [k * self.coeffs[k] for k in range(1, self.order + 1)]
        return TruncatedSeries(tuple(cs), n)

    def compose_polynomial(self, poly: Sequence) -> "TruncatedSeries":
        """Evaluate ``sum poly[k] * self**k`` (Horner)."""
        result = TruncatedSeries.constant(0, self.order)
        for c in reversed(list(poly)):
            result = result * self + as_fraction(c)
        return result

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = "h" if k == 1 else f"h^{k}"
            else:
                body = f"{mag}*h" if k == 1 else f"{mag}*h^{k}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) if parts else "0"


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """Logarithm of a series with constant term 1, same truncation order."""
    a = s.coeffs
    if a[0] != 1:
        raise SeriesDomainError(f"log needs constant term 1, got {a[0]}")
    out = [Fraction(0)]
    for n in range(1, s.order + 1):
        acc = n * a[n]
        for k in range(1, n):
            if out[k] and a[n - k]:
                acc -= k * out[k] * a[n - k]
        out.append(acc / n)
    return TruncatedSeries(tuple(out), s.order)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with zero constant term."""
    a = s.coeffs
    if a[0] != 0:
        raise SeriesDomainError(f"exp needs constant term 0, got {a[0]}")
    out = [Fraction(1)]
    for n in range(1, s.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if a[k] and out[n - k]:
                acc += k * a[k] * out[n - k]
        out.append(acc / n)
    return TruncatedSeries(tuple(out), s.order)


def exp_linear(k: Number, order: int) -> TruncatedSeries:
    """Series of ``e^{k h}``."""
    k = as_fraction(k)
    return TruncatedSeries(tuple(k**j / factorial(j) for j in range(order + 1)), order)


def sinh_half_series(order: int) -> TruncatedSeries:
    """Series of ``e^{h/2} - e^{-h/2}``."""
    return exp_linear(Fraction(1, 2), order) - exp_linear(Fraction(-1, 2), order)


def nu_series(order: int) -> TruncatedSeries:
    """``h / (e^{h/2} - e^{-h/2})`` to the given order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    # (e^{h/2} - e^{-h/2}) / h = sum h^{2j} / (4^j (2j+1)!)
    cs = [Fraction(0)] * (order + 1)
    for j in range(0, order // 2 + 1):
        cs[2 * j] = Fraction(1, 4**j * factorial(2 * j + 1))
    return TruncatedSeries(tuple(cs), order).inverse()


def b_coefficients(max_degree: int) -> dict:
    """Coefficients ``b_{2m}`` of ``-1/2 log nu(h) = sum b_{2m} h^{2m}``, keyed by 2m."""
    if max_degree < 2:
        return {}
    log_nu = series_log(nu_series(max_degree)) * Fraction(-1, 2)
    return {k: log_nu[k] for k in range(2, max_degree + 1, 2)}


@dataclass(frozen=True)
class SymmetricLaurent:
    """``sum_{k=-span}^{span} c_k t^k`` with ``c_k == c_{-k}``.

    ``coeffs`` lists ``c_{-span} .. c_{span}``.  The span is trimmed to the
    smallest one carrying a nonzero coefficient.
    """

    span: int
    coeffs: tuple

    def __post_init__(self):
        if self.span < 0:
            raise LaurentError("span must be non-negative")
        cs = tuple(as_fraction(c) for c in self.coeffs)
        if len(cs) != 2 * self.span + 1:
            raise LaurentError(f"span {self.span} needs {2 * self.span + 1} coefficients, got {len(cs)}")
        if cs != cs[::-1]:
            raise LaurentError(f"coefficients {[str(c) for c in cs]} are not symmetric under t -> 1/t")
        span = self.span
        while span > 0 and cs[0] == 0:
            cs = cs[1:-1]
            span -= 1
        object.__setattr__(self, "span", span)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_half(cls, half: Sequence) -> "SymmetricLaurent":
        """Build from ``[c_0, c_1, ..., c_d]``."""
        half = [as_fraction(c) for c in half]
        d = len(half) - 1
        return cls(d, tuple(half[:0:-1]) + tuple(half))

    @classmethod
    def one(cls) -> "SymmetricLaurent":
        return cls(0, (1,))

    def coeff(self, k: int) -> Fraction:
        if abs(k) > self.span:
            return Fraction(0)
        return self.coeffs[k + self.span]

    def half(self) -> tuple:
        return self.coeffs[self.span:]

    def value_at_one(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def as_dict(self) -> dict:
        return {k: self.coeff(k) for k in range(-self.span, self.span + 1) if self.coeff(k)}

    def __mul__(self, other: "SymmetricLaurent") -> "SymmetricLaurent":
        d = self.span + other.span
        out = [Fraction(0)] * (2 * d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return SymmetricLaurent(d, tuple(out))

    def to_json(self) -> dict:
        return {"span": self.span, "coeffs": [format_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "SymmetricLaurent":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["span"]), tuple(as_fraction(c) for c in data["coeffs"]))
        except (KeyError, TypeError) as exc:
            raise LaurentError(f"malformed Laurent JSON: {data!r}") from exc

    def __str__(self):
        parts = []
        for k in range(self.span, -self.span - 1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign if sign == "-" else "") + body if not parts else f" {sign} {body}")
        return "".join(parts) if parts else "0"


def laurent_eval_exp(p: SymmetricLaurent, order: int) -> TruncatedSeries:
    """Series of ``p(e^h)`` to the given order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    result = TruncatedSeries.constant(0, order)
    for k in range(-p.span, p.span + 1):
        c = p.coeff(k)
        if c:
            result = result + exp_linear(k, order) * c
    return result


def laurent_from_dict(terms: Mapping[int, Number]) -> dict:
    """Normalize a sparse ``{exponent: coeff}`` mapping, dropping zeros."""
    out = {}
    for k, c in terms.items():
        q = as_fraction(c)
        if q:
            out[int(k)] = q
    return out


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve a square nonsingular system exactly (Gauss-Jordan over Fractions)."""
    n = len(matrix)
    a = [[as_fraction(x) for x in row] + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def rank_of(rows: Iterable[Sequence]) -> int:
    """Rank of a list of rational vectors."""
    work = [[as_fraction(x) for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i][col]:
                f = work[i][col] / p[col]
                work[i] = [x - f * y for x, y in zip(work[i], p)]
        rank += 1
    return rank


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[as_fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
