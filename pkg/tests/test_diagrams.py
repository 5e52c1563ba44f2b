import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from alexlmo.diagrams import (
    EMPTY,
    DiagramCombination,
    DiagramError,
    UniTrivalentDiagram,
    canonicalize,
    circle,
    component_classification,
    disjoint_union,
    in_b_double_prime,
    in_b_prime,
    in_b_wheels,
    interval,
    theta,
    union_all,
    wheel,
)
from alexlmo.verify import random_character

from _helpers import scramble


def _incidence(d: UniTrivalentDiagram) -> nx.Graph:
    g = nx.Graph()
    for i, cell in enumerate(d.vertices):
        g.add_node(("v", i), kind=len(cell))
        for x in cell:
            g.add_node(("d", x), kind=0)
            g.add_edge(("v", i), ("d", x))
    for a, b in d.edges:
        g.add_edge(("d", a), ("d", b))
    return g


def _rotation_parity(src, dst) -> int:
    return 1 if tuple(src) in (dst, dst[1:] + dst[:1], dst[2:] + dst[:2]) else -1


def oracle_signs(a: UniTrivalentDiagram, b: UniTrivalentDiagram) -> set:
    """Signs of all isomorphisms a -> b; cyclic-order reversals count -1 each."""
    if a.circles != b.circles:
        return set()
    ga, gb = _incidence(a), _incidence(b)
    gm = GraphMatcher(ga, gb, node_match=lambda x, y: x["kind"] == y["kind"])
    cell_b = {i: cell for i, cell in enumerate(b.vertices)}
    signs = set()
    for iso in gm.isomorphisms_iter():
        s = 1
        for i, cell in enumerate(a.vertices):
            if len(cell) == 3:
                j = iso[("v", i)][1]
                s *= _rotation_parity(tuple(iso[("d", x)][1] for x in cell), cell_b[j])
        signs.add(s)
    return signs


def test_wheel_shape():
    w = wheel(4)
    assert w.legs == 4 and w.trivalent == 4 and w.degree == 4
    assert theta().degree == 1 and theta().legs == 0


@pytest.mark.parametrize("k", range(5))
def test_odd_wheels_vanish(k):
    assert canonicalize(wheel(2 * k + 1)) is None


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_even_wheels_survive(n):
    assert canonicalize(wheel(n)) is not None


def test_odd_wheel_oracle_agrees():
    for n in (1, 2, 3, 4, 5):
        zero = -1 in oracle_signs(wheel(n), wheel(n))
        assert zero == (canonicalize(wheel(n)) is None)


def test_tadpoles_vanish():
    tad = UniTrivalentDiagram(((0, 1, 2), (3,)), ((0, 1), (2, 3)))
    assert canonicalize(tad) is None
    assert canonicalize(disjoint_union(tad, wheel(2))) is None


def test_theta_flip_sign():
    cd, s = canonicalize(theta())
    cd2, s2 = canonicalize(theta().flip_vertex(0))
    assert cd == cd2 and s2 == -s


def test_canonicalize_twice_is_identity():
    for d in [theta(), wheel(4), union_all([wheel(2), wheel(4)]), interval()]:
        cd, _ = canonicalize(d)
        assert canonicalize(cd.rep) == (cd, 1)


def test_interval_sign():
    cd, s = canonicalize(interval())
    assert s == 1 and cd.legs == 2 and cd.degree == 1


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_scramble_invariance(seed):
    rng = random.Random(seed)
    t = rng.randint(1, 6)
    legs = rng.choice([u for u in range(0, 5) if (3 * t + u) % 2 == 0 and u <= 3 * t and (t, u) != (1, 1)])
    d = random_character(rng, t, legs)
    res = canonicalize(d)
    flips = set(rng.sample(range(t), rng.randint(0, t)))
    res2 = canonicalize(scramble(d, rng, flips))
    if res is None:
        assert res2 is None
    else:
        assert res2[0] == res[0]
        assert res2[1] == res[1] * (-1) ** len(flips)


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_against_isomorphism_oracle(seed):
    rng = random.Random(seed)
    t = rng.randint(1, 4)
    legs = rng.choice([u for u in range(0, 5) if (3 * t + u) % 2 == 0 and u <= 3 * t and (t, u) != (1, 1)])
    d = random_character(rng, t, legs)
    auto = oracle_signs(d, d)
    res = canonicalize(d)
    assert (res is None) == (-1 in auto)
    if res is not None:
        cd, s = res
        # d = s * rep, so every isomorphism d -> rep has sign s
        assert oracle_signs(d, cd.rep) == {s}


def test_distinct_classes_are_not_isomorphic():
    a, b = canonicalize(wheel(4))[0], canonicalize(union_all([wheel(2), wheel(2)]))[0]
    assert a != b
    assert oracle_signs(a.rep, b.rep) == set()


def test_validation():
    with pytest.raises(DiagramError):
        UniTrivalentDiagram(((0, 1),), ((0, 1),))
    with pytest.raises(DiagramError):
        UniTrivalentDiagram(((0,), (1,)), ())
    with pytest.raises(DiagramError):
        UniTrivalentDiagram(((0,), (1,), (2,)), ((0, 1), (1, 2)))


def test_json_round_trip():
    d = union_all([wheel(3), theta()]).with_circles(2)
    assert UniTrivalentDiagram.from_json(d.to_json()) == d
    with pytest.raises(DiagramError):
        UniTrivalentDiagram.from_json({"edges": []})


def test_classification():
    assert in_b_wheels(union_all([wheel(2), wheel(4)]))
    assert in_b_prime(wheel(2)) and not in_b_prime(interval())
    reports = component_classification(disjoint_union(wheel(2), interval()))
    assert sorted(r.is_interval for r in reports) == [False, True]
    star = UniTrivalentDiagram(((0, 1, 2), (3, 4, 5), (6,), (7,), (8,), (9,)), ((0, 3), (1, 6), (2, 7), (4, 8), (5, 9)))
    assert not in_b_double_prime(star) and not in_b_wheels(star)
    assert in_b_double_prime(disjoint_union(theta(), wheel(2)))
    assert not in_b_double_prime(union_all([wheel(2), wheel(4)]))


def test_combination_algebra():
    x = DiagramCombination.from_diagram(wheel(2), 2)
    y = DiagramCombination.from_diagram(scramble(wheel(2), random.Random(1)), Fraction(1, 2))
    assert (x + y).coeff_of(wheel(2)) == Fraction(5, 2)
    assert not (x - x)
    assert x * 0 == DiagramCombination()
    assert DiagramCombination.from_diagram(wheel(3)) == DiagramCombination()
    prod = x.union(DiagramCombination.from_diagram(wheel(4)))
    assert prod.coeff_of(union_all([wheel(2), wheel(4)])) == 2
    assert DiagramCombination.from_json(prod.to_json()) == prod
    assert x.degrees() == [2]


def test_circles_and_empty():
    cd, s = canonicalize(circle())
    assert cd.circles == 1 and cd.degree == 0 and s == 1
    assert canonicalize(EMPTY)[0].degree == 0
    assert DiagramCombination.one().coeff_of(EMPTY) == 1
