"""The wheel algebra: even-wheel monomials, the disjoint-union exponential,
and the wheel series attached to an Alexander polynomial.

A wheel monomial is a sorted tuple of even wheel sizes, e.g. ``(2, 2, 4)``
for the disjoint union of two 2-wheels and a 4-wheel; its degree is the sum
of the sizes.  ``()`` is the unit (the empty diagram).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, Mapping, Tuple

from .exactnum import (
    LaurentError,
    SymmetricLaurent,
    TruncatedSeries,
    as_fraction,
    b_coefficients,
    format_fraction,
    laurent_eval_exp,
    series_exp,
    series_log,
    solve_linear,
)


class SpanError(ValueError):
    """No symmetric Laurent polynomial within the span bound fits the data."""


class WheelSeriesError(ValueError):
    pass


def even_partitions(total: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``total`` into even parts, each a non-decreasing tuple."""
    if total == 0:
        yield ()
        return
    if largest is None:
        largest = total
    for part in range(min(total, largest) // 2 * 2, 1, -2):
        for rest in even_partitions(total - part, part):
            yield tuple(sorted(rest + (part,)))


def _multiplicities(mono: Tuple[int, ...]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in mono:
        out[p] = out.get(p, 0) + 1
    return out


def _merge(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sorted(a + b))


@dataclass(frozen=True)
class WheelSeries:
    """Element of the wheel algebra truncated at total degree ``max_degree``."""

    terms: Mapping
    max_degree: int

    def __post_init__(self):
        clean = {}
        for mono, c in dict(self.terms).items():
            mono = tuple(sorted(int(p) for p in mono))
            if any(p <= 0 or p % 2 for p in mono):
                raise WheelSeriesError(f"wheel sizes must be positive and even, got {mono}")
            c = as_fraction(c)
            if c and sum(mono) <= self.max_degree:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __getitem__(self, mono) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def grade(self, degree: int) -> "WheelSeries":
        return WheelSeries({m: c for m, c in self.terms.items() if sum(m) == degree}, self.max_degree)

    def __eq__(self, other):
        if not isinstance(other, WheelSeries):
            return NotImplemented
        n = min(self.max_degree, other.max_degree)
        trim = lambda t: {m: c for m, c in t.items() if sum(m) <= n}
        return trim(self.terms) == trim(other.terms)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.max_degree))

    def __add__(self, other: "WheelSeries") -> "WheelSeries":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return WheelSeries(acc, min(self.max_degree, other.max_degree))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other) -> "WheelSeries":
        if not isinstance(other, WheelSeries):
            q = as_fraction(other)
            return WheelSeries({m: q * c for m, c in self.terms.items()}, self.max_degree)
        n = min(self.max_degree, other.max_degree)
        acc: Dict[Tuple[int, ...], Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if sum(ma) + sum(mb) <= n:
                    m = _merge(ma, mb)
                    acc[m] = acc.get(m, Fraction(0)) + ca * cb
        return WheelSeries(acc, n)

    __rmul__ = __mul__

    def to_json(self) -> list:
        return [{"wheels": list(m), "coeff": format_fraction(c)} for m, c in self.items()]

    @classmethod
    def from_json(cls, data, max_degree: int = None) -> "WheelSeries":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {tuple(t["wheels"]): as_fraction(t["coeff"]) for t in data}
        if max_degree is None:
            max_degree = max((sum(m) for m in terms), default=0)
        return cls(terms, max_degree)


@dataclass(frozen=True)
class AlphaSeries:
    """Linear combination ``sum coeff[2m] * w_{2m}`` of even wheels."""

    coeffs: Mapping
    max_degree: int

    def __post_init__(self):
        clean = {}
        for k, c in dict(self.coeffs).items():
            k = int(k)
            if k <= 0 or k % 2:
                raise WheelSeriesError(f"wheel size {k} is not a positive even integer")
            c = as_fraction(c)
            if c and k <= self.max_degree:
                clean[k] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, AlphaSeries):
            return NotImplemented
        n = min(self.max_degree, other.max_degree)
        return {k: c for k, c in self.coeffs.items() if k <= n} == {k: c for k, c in other.coeffs.items() if k <= n}

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.max_degree))

    def __add__(self, other: "AlphaSeries") -> "AlphaSeries":
        keys = set(self.coeffs) | set(other.coeffs)
        return AlphaSeries({k: self[k] + other[k] for k in keys}, min(self.max_degree, other.max_degree))

    def __sub__(self, other: "AlphaSeries") -> "AlphaSeries":
        keys = set(self.coeffs) | set(other.coeffs)
        return AlphaSeries({k: self[k] - other[k] for k in keys}, min(self.max_degree, other.max_degree))

    def as_wheel_series(self) -> WheelSeries:
        return WheelSeries({(k,): c for k, c in self.coeffs.items()}, self.max_degree)

    def to_json(self) -> dict:
        return {str(k): format_fraction(c) for k, c in self.coeffs.items()}

    @classmethod
    def from_json(cls, data, max_degree: int = None) -> "AlphaSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {int(k): as_fraction(v) for k, v in data.items()}
        if max_degree is None:
            max_degree = max(coeffs, default=0)
        return cls(coeffs, max_degree)


def exp_disjoint(alpha: AlphaSeries, max_degree: int) -> WheelSeries:
    """``sum_k alpha^k / k!`` in the wheel algebra, truncated at ``max_degree``."""
    terms = {}
    for total in range(0, max_degree + 1, 2):
        for mono in even_partitions(total):
            c = Fraction(1)
            for size, k in _multiplicities(mono).items():
                c *= alpha[size] ** k / factorial(k)
            if c:
                terms[mono] = c
    return WheelSeries(terms, max_degree)


def log_disjoint(w: WheelSeries) -> AlphaSeries:
    """Inverse of :func:`exp_disjoint`; ``w`` must have constant term 1."""
    if w[()] != 1:
        raise WheelSeriesError(f"log needs unit constant term, got {w[()]}")
    n = w.max_degree
    y = w - WheelSeries({(): 1}, n)
    result = WheelSeries({}, n)
    power = WheelSeries({(): 1}, n)
    for k in range(1, n // 2 + 1):
        power = power * y
        result = result + power * Fraction((-1) ** (k + 1), k)
    nonlinear = {m: c for m, c in result.terms.items() if len(m) != 1}
    if nonlinear:
        raise WheelSeriesError("series is not the exponential of a combination of single wheels")
    return AlphaSeries({m[0]: c for m, c in result.terms.items()}, n)


# ---------------------------------------------------------------------------
# Alexander polynomial <-> wheel coefficients
# ---------------------------------------------------------------------------


def check_normalized(A: SymmetricLaurent) -> None:
    if not isinstance(A, SymmetricLaurent):
        raise LaurentError("expected a SymmetricLaurent")
    if A.value_at_one() != 1:
        raise LaurentError(f"Alexander polynomial must evaluate to 1 at t=1, got {A.value_at_one()}")


def a_prime_from_alexander(A: SymmetricLaurent, max_degree: int) -> Dict[int, Fraction]:
    """Coefficients of ``-1/2 log A(e^h) = sum a'_{2m} h^{2m}`` for ``2m <= max_degree``."""
    check_normalized(A)
    if max_degree < 2:
        return {}
    series = series_log(laurent_eval_exp(A, max_degree)) * Fraction(-1, 2)
    for k in range(1, max_degree + 1, 2):
        if series[k]:
            raise ArithmeticError(f"odd coefficient h^{k} = {series[k]} should vanish for symmetric input")
    return {k: series[k] for k in range(2, max_degree + 1, 2)}


def alpha_from_alexander(A: SymmetricLaurent, max_degree: int) -> AlphaSeries:
    """Wheel series whose 2m-wheel coefficient is ``2 b_{2m} + a'_{2m}``."""
    ap = a_prime_from_alexander(A, max_degree)
    b = b_coefficients(max_degree)
    return AlphaSeries({k: 2 * b[k] + ap[k] for k in ap}, max_degree)


def a_prime_from_alpha(alpha: AlphaSeries) -> Dict[int, Fraction]:
    b = b_coefficients(alpha.max_degree)
    return {k: alpha[k] - 2 * b[k] for k in range(2, alpha.max_degree + 1, 2)}


@lru_cache(maxsize=None)
def _cosh_rows(span: int, order: int):
    # coefficient of h^{2j} in e^{kh} + e^{-kh} is 2 k^{2j} / (2j)!
    rows = []
    for j in range(0, order // 2 + 1):
        row = [Fraction(1 if j == 0 else 0)]
        row += [Fraction(2 * k ** (2 * j), factorial(2 * j)) for k in range(1, span + 1)]
        rows.append(row)
    return rows


def alexander_from_a_prime(coeffs: Mapping[int, Fraction], span_bound: int) -> SymmetricLaurent:
    """The symmetric Laurent polynomial of span at most ``span_bound`` with the given a'."""
    if span_bound < 0:
        raise ValueError("span bound must be non-negative")
    coeffs = {int(k): as_fraction(v) for k, v in coeffs.items()}
    for k, v in coeffs.items():
        if k <= 0 or k % 2:
            if v:
                raise ValueError(f"a' is indexed by positive even degrees, got {k}")
    top = max([k for k in coeffs] + [0])
    if top < 2 * span_bound:
        raise SpanError(f"need a' coefficients through degree {2 * span_bound}, have {top}")
    order = top
    log_part = TruncatedSeries.from_coeffs(
        [Fraction(0)] + [-2 * coeffs.get(k, Fraction(0)) for k in range(1, order + 1)], order
    )
    target = series_exp(log_part)
    rows = _cosh_rows(span_bound, order)
    square = rows[: span_bound + 1]
    sol = solve_linear(square, [target[2 * j] for j in range(span_bound + 1)])
    for j in range(span_bound + 1, order // 2 + 1):
        got = sum((r * s for r, s in zip(rows[j], sol)), Fraction(0))
        if got != target[2 * j]:
            raise SpanError(f"no symmetric polynomial of span <= {span_bound} matches through h^{order}")
    return SymmetricLaurent.from_half(sol)
