"""Closing legs of Chinese characters, the circle substitution, the
contraction ``iota_m`` and the projection onto the wheel subspace."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from . import kernels
from .diagrams import (
    CanonicalDiagram,
    DiagramCombination,
    DiagramError,
    UniTrivalentDiagram,
    canonicalize,
    component_classification,
    disjoint_union,
    interval,
    union_all,
    wheel,
)
from .wheels import WheelSeries


class UnsupportedInput(ValueError):
    """Input lies outside the subspace where the operation is defined."""


def _arrays(d: UniTrivalentDiagram):
    d = d.compact()
    n = sum(len(c) for c in d.vertices)
    partner = [0] * n
    for a, b in d.edges:
        partner[a] = b
        partner[b] = a
    return d, partner


def close_raw(d: UniTrivalentDiagram) -> List[UniTrivalentDiagram]:
    """One diagram per leg pairing, before any canonical merging.

    Pairings are enumerated by joining the lowest unpaired leg with each
    later leg in turn.
    """
    if d.legs % 2:
        raise DiagramError(f"cannot close a diagram with an odd number of legs ({d.legs})")
    d, partner = _arrays(d)
    legs = d.leg_darts()
    cells = tuple(cell for cell in d.vertices if len(cell) == 3)
    out = []
    for new, circ in kernels.close_all(partner, legs):
        edges = tuple((a, b) for a, b in enumerate(new) if b > a)
        out.append(UniTrivalentDiagram(cells, edges, d.circles + circ))
    return out


def close(d: UniTrivalentDiagram) -> DiagramCombination:
    """Sum over all pairings of the legs (circles kept as ``circle_count``)."""
    acc: Dict[CanonicalDiagram, Fraction] = {}
    for g in close_raw(d):
        res = canonicalize(g)
        if res is None:
            continue
        cd, s = res
        acc[cd] = acc.get(cd, Fraction(0)) + s
    return DiagramCombination(acc)


def close_combination(x: DiagramCombination) -> DiagramCombination:
    out = DiagramCombination()
    for cd, c in x:
        out = out + close(cd.rep) * c
    return out


def o_substitute(x: DiagramCombination, m: int) -> DiagramCombination:
    """Replace every bare circle by the scalar ``-2m``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    acc: Dict[CanonicalDiagram, Fraction] = {}
    for cd, c in x:
        k = cd.circles
        if k == 0:
            acc[cd] = acc.get(cd, Fraction(0)) + c
            continue
        res = canonicalize(cd.rep.with_circles(0))
        base, s = res
        acc[base] = acc.get(base, Fraction(0)) + c * s * Fraction(-2 * m) ** k
    return DiagramCombination(acc)


def iota(d: UniTrivalentDiagram, m: int) -> DiagramCombination:
    """``O_{-2m}(close(d))`` when ``d`` has exactly ``2m`` legs, else 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if d.legs != 2 * m:
        return DiagramCombination()
    return o_substitute(close(d), m)


def iota_combination(x: DiagramCombination, m: int) -> DiagramCombination:
    out = DiagramCombination()
    for cd, c in x:
        if cd.legs == 2 * m:
            out = out + iota(cd.rep, m) * c
    return out


def interval_identity_check(C: UniTrivalentDiagram, m: int) -> bool:
    """Check ``O_{-2m} close(C + I) == -2(m-k) O_{-2m} close(C)`` for ``2k`` legs."""
    if C.legs % 2:
        raise DiagramError("C must have an even number of legs")
    k = C.legs // 2
    lhs = o_substitute(close(disjoint_union(C, interval())), m)
    rhs = o_substitute(close(C), m) * (-2 * (m - k))
    return lhs == rhs


# ---------------------------------------------------------------------------
# wheel projection
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def wheel_monomial(mono: Tuple[int, ...]) -> UniTrivalentDiagram:
    return union_all(wheel(n) for n in mono)


@lru_cache(maxsize=None)
def _wheel_key(mono: Tuple[int, ...]):
    res = canonicalize(wheel_monomial(mono))
    if res is None:
        return None
    return res


def wheel_monomial_combination(mono: Tuple[int, ...], coeff=1) -> DiagramCombination:
    return DiagramCombination.from_diagram(wheel_monomial(tuple(sorted(mono))), coeff)


def wheel_series_to_combination(w: WheelSeries) -> DiagramCombination:
    out = DiagramCombination()
    for mono, c in w.items():
        out = out + wheel_monomial_combination(mono, c)
    return out


def wheel_sizes(cd: CanonicalDiagram):
    """Sorted wheel sizes if every component is a wheel, else ``None``."""
    d = cd.rep
    if d.circles:
        return None
    reports = component_classification(d)
    if not all(r.is_wheel for r in reports):
        return None
    return tuple(sorted(r.legs for r in reports))


def _check_b_prime(cd: CanonicalDiagram):
    if cd.circles:
        raise UnsupportedInput("bare circle components are not Chinese characters")
    if any(r.is_interval for r in component_classification(cd.rep)):
        raise UnsupportedInput("interval components present; the deframing projection is only implemented on B'")


def p_wh(x: DiagramCombination, max_degree: int = None) -> WheelSeries:
    """Projection of an interval-free combination onto the wheel subspace."""
    terms: Dict[Tuple[int, ...], Fraction] = {}
    top = 0
    for cd, c in x:
        _check_b_prime(cd)
        top = max(top, cd.degree)
        mono = wheel_sizes(cd)
        if mono is None:
            continue
        ref, s = _wheel_key(mono)
        if ref != cd:
            raise AssertionError("wheel monomial canonicalized to a different class")
        # cd.rep == s * (wheel monomial)
        terms[mono] = terms.get(mono, Fraction(0)) + c * s
    return WheelSeries(terms, top if max_degree is None else max_degree)


def wheel_projection_sides(b: DiagramCombination, m: int) -> Tuple[DiagramCombination, DiagramCombination]:
    """Both sides of the degree-m identity ``{iota_m(b)}_m = close(P_wh({b}_2m))``."""
    for cd, _ in b:
        _check_b_prime(cd)
    lhs = iota_combination(b, m).grade(m)
    rhs = close_combination(wheel_series_to_combination(p_wh(b.grade(2 * m))))
    return lhs, rhs


def iota_projection_check(b: DiagramCombination, m: int) -> bool:
    """Compare both sides in the degree-m quotient space (AS and IHX)."""
    from .relspace import quotient_space

    lhs, rhs = wheel_projection_sides(b, m)
    space = quotient_space(m)
    return space.equal_mod_relations(lhs, rhs)
