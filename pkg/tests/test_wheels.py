import random
from fractions import Fraction

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given, settings
from hypothesis import strategies as st

from alexlmo.exactnum import LaurentError, SymmetricLaurent
from alexlmo.wheels import (
    AlphaSeries,
    SpanError,
    WheelSeries,
    WheelSeriesError,
    a_prime_from_alexander,
    a_prime_from_alpha,
    alexander_from_a_prime,
    alpha_from_alexander,
    even_partitions,
    exp_disjoint,
    log_disjoint,
)

h, t = sympy.symbols("h t")

small = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def random_alexander(rng: random.Random, span: int) -> SymmetricLaurent:
    half = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(span)]
    a0 = 1 - 2 * sum(half)
    return SymmetricLaurent.from_half([a0] + half)


def sympy_a_prime(A: SymmetricLaurent, order: int):
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.exp(k * h) for k, c in A.as_dict().items())
    ser = sympy.series(-sympy.log(expr) / 2, h, 0, order + 1).removeO()
    return {k: Fraction(str(ser.coeff(h, k))) for k in range(2, order + 1, 2)}


@pytest.mark.parametrize("n", range(0, 7))
def test_even_partition_counts(n):
    parts = list(even_partitions(2 * n))
    assert len(parts) == partition(n)
    assert len(set(parts)) == len(parts)
    assert all(sum(p) == 2 * n and all(x % 2 == 0 for x in p) for p in parts)


def test_trefoil_alpha():
    A = SymmetricLaurent.from_half([-1, 1])
    assert alpha_from_alexander(A, 4) == AlphaSeries({2: Fraction(-11, 24), 4: Fraction(599, 2880)}, 4)


@given(st.integers(0, 10**6), st.integers(0, 2))
@settings(max_examples=15, deadline=None)
def test_a_prime_against_sympy(seed, span):
    A = random_alexander(random.Random(seed), span)
    assert a_prime_from_alexander(A, 6) == sympy_a_prime(A, 6)


@given(st.integers(0, 10**6), st.integers(0, 3))
@settings(max_examples=50, deadline=None)
def test_alexander_round_trip(seed, span):
    A = random_alexander(random.Random(seed), span)
    ap = a_prime_from_alexander(A, 2 * span + 2)
    assert alexander_from_a_prime(ap, span) == A
    assert alexander_from_a_prime(ap, span + 1) == A
    alpha = alpha_from_alexander(A, 2 * span + 2)
    assert a_prime_from_alpha(alpha) == ap


def test_span_error():
    A = SymmetricLaurent.from_half([-3, 2])
    ap = a_prime_from_alexander(A, 4)
    with pytest.raises(SpanError):
        alexander_from_a_prime(ap, 0)
    with pytest.raises(SpanError):
        alexander_from_a_prime({2: 1}, 2)


def test_unnormalized_input():
    with pytest.raises(LaurentError):
        a_prime_from_alexander(SymmetricLaurent.from_half([2, 1]), 4)


@given(st.lists(small, min_size=3, max_size=3))
@settings(max_examples=50, deadline=None)
def test_exp_log_round_trip(cs):
    alpha = AlphaSeries({2: cs[0], 4: cs[1], 6: cs[2]}, 6)
    assert log_disjoint(exp_disjoint(alpha, 6)) == alpha


@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=2, max_size=2))
@settings(max_examples=50, deadline=None)
def test_exp_is_multiplicative(a, b):
    x = AlphaSeries({2: a[0], 4: a[1]}, 4)
    y = AlphaSeries({2: b[0], 4: b[1]}, 4)
    assert exp_disjoint(x + y, 4) == exp_disjoint(x, 4) * exp_disjoint(y, 4)


def test_exp_low_terms():
    w = exp_disjoint(AlphaSeries({2: Fraction(1, 2), 4: 3}, 4), 4)
    assert w[()] == 1 and w[(2,)] == Fraction(1, 2)
    assert w[(2, 2)] == Fraction(1, 8) and w[(4,)] == 3


def test_log_rejects_non_exponentials():
    with pytest.raises(WheelSeriesError):
        log_disjoint(WheelSeries({(): 2}, 4))
    with pytest.raises(WheelSeriesError):
        log_disjoint(WheelSeries({(): 1, (2, 2): 1}, 4))


def test_json_round_trips():
    w = WheelSeries({(): 1, (2,): Fraction(-1, 3), (2, 4): 5}, 6)
    assert WheelSeries.from_json(w.to_json(), 6) == w
    a = AlphaSeries({2: Fraction(1, 48), 4: Fraction(-1, 5760)}, 4)
    assert AlphaSeries.from_json(a.to_json()) == a
