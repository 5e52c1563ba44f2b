import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from alexlmo.exactnum import LaurentError, SymmetricLaurent, nu_series
from alexlmo.knots import (
    KNOT_TABLE,
    ConwayPolynomial,
    CrossingBoundError,
    KnotInputError,
    PDCode,
    SeifertMatrix,
    alexander_from_pd,
    alexander_from_seifert,
    conway_from_pd,
    conway_to_alexander,
    knot_alexander,
    knot_pd,
    renormalized_conway,
    validate_manifold_alexander,
)

t = sympy.Symbol("t")


def torus_2n(n: int) -> list:
    """PD code of the (2, n) torus knot, n odd."""
    lab = lambda x: (x - 1) % (2 * n) + 1
    return [[lab(2 * i + 1), lab(2 * i + 1 + n), lab(2 * i + 2), lab(2 * i + 2 + n)] for i in range(n)]


def sympy_alexander(rows) -> SymmetricLaurent:
    if not rows:
        return SymmetricLaurent.one()
    V = sympy.Matrix(rows)
    p = sympy.Poly(sympy.expand((t * V - V.T).det()), t)
    coeffs = [Fraction(int(c)) for c in reversed(p.all_coeffs())]
    lo = next(i for i, c in enumerate(coeffs) if c)
    coeffs = coeffs[lo:]
    while not coeffs[-1]:
        coeffs.pop()
    span = (len(coeffs) - 1) // 2
    total = sum(coeffs)
    return SymmetricLaurent(span, tuple(c / total for c in coeffs))


@pytest.mark.parametrize("name", sorted(KNOT_TABLE))
def test_table_consistency(name):
    entry = KNOT_TABLE[name]
    C = conway_from_pd(knot_pd(name))
    assert C == ConwayPolynomial(tuple(entry["conway"]))
    assert conway_to_alexander(C) == knot_alexander(name)
    assert knot_alexander(name) == sympy_alexander(entry["seifert"])


@pytest.mark.parametrize("name", sorted(KNOT_TABLE))
def test_random_basepoints(name):
    pd = knot_pd(name)
    expect = conway_from_pd(pd)
    rng = random.Random(name)
    labels = sorted({a for x in pd.crossings for a in x})
    for _ in range(5):
        keys = {a: rng.random() for a in labels}
        assert conway_from_pd(pd, priority=keys.__getitem__) == expect


@pytest.mark.parametrize("n,conway", [(3, [1, 0, 1]), (5, [1, 0, 3, 0, 1]), (7, [1, 0, 6, 0, 5, 0, 1])])
def test_torus_knots(n, conway):
    assert conway_from_pd(PDCode.from_crossings(torus_2n(n))) == ConwayPolynomial(tuple(conway))


def symplectic_seifert(rng: random.Random, g: int):
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-2, 2)
    for i in range(g):
        rows[2 * i][2 * i + 1] += 1
    return rows


@given(st.integers(0, 10**6), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_seifert_against_sympy(seed, g):
    rows = symplectic_seifert(random.Random(seed), g)
    assert alexander_from_seifert(SeifertMatrix(tuple(map(tuple, rows)))) == sympy_alexander(rows)


def test_bad_seifert():
    with pytest.raises(KnotInputError):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(KnotInputError):
        SeifertMatrix(((1,),))


def test_bad_pd():
    with pytest.raises(KnotInputError):
        PDCode.from_crossings([[1, 2, 3, 4]])
    with pytest.raises(KnotInputError):
        PDCode.from_crossings([[1, 2, 3]])
    with pytest.raises(KnotInputError):
        # Hopf link
        PDCode.from_crossings([[1, 3, 2, 4], [3, 1, 4, 2]])
    with pytest.raises(KnotInputError):
        PDCode.from_json({"pd": []})


def test_crossing_bound():
    with pytest.raises(CrossingBoundError):
        conway_from_pd(PDCode.from_crossings(torus_2n(13)))


def test_pd_json_and_unknot():
    pd = PDCode.from_json({"crossings": KNOT_TABLE["trefoil"]["pd"]})
    assert alexander_from_pd(pd) == SymmetricLaurent.from_half([-1, 1])
    assert conway_from_pd(PDCode.from_crossings([])) == ConwayPolynomial((1,))
    # one-crossing unknot
    assert conway_from_pd(PDCode.from_crossings([[1, 1, 2, 2]])) == ConwayPolynomial((1,))


def test_conway_text_and_json():
    C = ConwayPolynomial((1, 0, 3, 0, 1))
    assert str(C) == "1 + 3*z^2 + z^4"
    assert ConwayPolynomial.from_json(C.to_json()) == C
    assert C.is_knot_like() and not ConwayPolynomial((1, 1)).is_knot_like()
    with pytest.raises(LaurentError):
        conway_to_alexander(ConwayPolynomial((1, 1)))


def test_renormalized_conway():
    assert renormalized_conway(ConwayPolynomial((1,)), 6) == nu_series(6)
    s = renormalized_conway(ConwayPolynomial((1, 0, 1)), 2)
    assert s.coeffs == (1, 0, Fraction(23, 24))


def test_validate_manifold_alexander():
    assert validate_manifold_alexander({0: -1, 1: 3, 2: -1}) == SymmetricLaurent.from_half([3, -1])
    assert validate_manifold_alexander({0: 1, 1: -3, 2: 1}) == SymmetricLaurent.from_half([3, -1])
    assert validate_manifold_alexander({5: 2}) == SymmetricLaurent.one()
    for bad in ({0: 1, 1: -1}, {0: 1, 1: 2}, {0: 1, 2: 2}, {}):
        with pytest.raises(LaurentError):
            validate_manifold_alexander(bad)
