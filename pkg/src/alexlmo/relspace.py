"""The space of trivalent graphs of a fixed degree modulo AS and IHX.

The ambient basis is every nonzero AS-class of trivalent multigraph with
``2n`` vertices and no bare circles (disconnected graphs included).  IHX
relations are generated on every edge of every basis graph and reduced to
reduced row echelon form with integer (fraction-free) elimination.
Quotient coordinates are the entries on the non-pivot columns after
reduction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from .diagrams import (
    CanonicalDiagram,
    DiagramCombination,
    UniTrivalentDiagram,
    canonicalize,
    union_all,
)
from .exactnum import rank_of

MAX_DEGREE = 4


class DegreeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _connected_cubic_multigraphs(k: int) -> List[List[Tuple[int, int]]]:
    """Edge lists of loopless connected cubic multigraphs on ``k`` labeled vertices.

    Vertices are opened in breadth-first order, so every isomorphism class is
    produced at least once (usually several times).
    """
    out = []
    deg = [0] * k
    edges: List[Tuple[int, int]] = []

    def rec(i: int, touched: int, low: int):
        while i < k and deg[i] == 3:
            i += 1
            low = 0
        if i == k:
            out.append(list(edges))
            return
        if i >= touched:
            return
        for j in range(max(i + 1, low), min(touched + 1, k)):
            if deg[j] == 3:
                continue
            deg[i] += 1
            deg[j] += 1
            edges.append((i, j))
            rec(i, max(touched, j + 1), j)
            edges.pop()
            deg[i] -= 1
            deg[j] -= 1

    rec(0, 1, 0)
    return out


def _diagram_from_edges(k: int, edge_list: Sequence[Tuple[int, int]]) -> UniTrivalentDiagram:
    slots: List[List[int]] = [[] for _ in range(k)]
    edges = []
    dart = 0
    for u, v in edge_list:
        slots[u].append(dart)
        slots[v].append(dart + 1)
        edges.append((dart, dart + 1))
        dart += 2
    return UniTrivalentDiagram(tuple(tuple(s) for s in slots), tuple(edges))


@lru_cache(maxsize=None)
def connected_classes(k: int) -> Tuple[CanonicalDiagram, ...]:
    """Nonzero connected AS-classes of trivalent graphs with ``k`` vertices."""
    found: Dict[tuple, CanonicalDiagram] = {}
    for el in _connected_cubic_multigraphs(k):
        res = canonicalize(_diagram_from_edges(k, el))
        if res is not None:
            found.setdefault(res[0].key, res[0])
    return tuple(found[key] for key in sorted(found))


def _multisets(sizes: List[int], total: int, start: int = 0):
    if total == 0:
        yield []
        return
    for idx in range(start, len(sizes)):
        s = sizes[idx]
        if s <= total:
            for rest in _multisets(sizes, total - s, idx):
                yield [idx] + rest


@lru_cache(maxsize=None)
def enumerate_trivalent(n: int) -> Tuple[CanonicalDiagram, ...]:
    """Ambient basis of degree ``n``: all nonzero classes with ``2n`` trivalent vertices."""
    if not 0 <= n <= MAX_DEGREE:
        raise DegreeError(f"degree {n} outside supported range 0..{MAX_DEGREE}")
    pool: List[CanonicalDiagram] = []
    for k in range(2, 2 * n + 1, 2):
        pool.extend(connected_classes(k))
    sizes = [2 * cd.degree for cd in pool]
    found: Dict[tuple, CanonicalDiagram] = {}
    for combo in _multisets(sizes, 2 * n):
        res = canonicalize(union_all(pool[i].rep for i in combo))
        if res is not None:
            found.setdefault(res[0].key, res[0])
    return tuple(found[key] for key in sorted(found))


# ---------------------------------------------------------------------------
# IHX
# ---------------------------------------------------------------------------


def _regrouped(d: UniTrivalentDiagram, u: int, v: int, cu, cv) -> UniTrivalentDiagram:
    verts = list(d.vertices)
    verts[u] = cu
    verts[v] = cv
    return UniTrivalentDiagram(tuple(verts), d.edges, d.circles)


def ihx_terms(d: UniTrivalentDiagram, dart: int) -> List[UniTrivalentDiagram]:
    """The three diagrams of the IHX relation at the edge containing ``dart``.

    With ``(x, a, b)`` the cyclic order at one end and ``(y, c, d)`` at the
    other, the relation is the Jacobi identity
    ``[(a,b,x),(y,c,d)] + [(b,c,x),(y,a,d)] + [(c,a,x),(y,b,d)] = 0``.
    """
    vo = d.vertex_of
    y = d.partner[dart]
    u, v = vo[dart], vo[y]
    cu, cv = d.vertices[u], d.vertices[v]
    if u == v or len(cu) != 3 or len(cv) != 3:
        raise ValueError("IHX needs an edge between two distinct trivalent vertices")
    r = cu.index(dart)
    x, a, b = cu[r], cu[(r + 1) % 3], cu[(r + 2) % 3]
    s = cv.index(y)
    c, dd = cv[(s + 1) % 3], cv[(s + 2) % 3]
    return [
        _regrouped(d, u, v, (a, b, x), (y, c, dd)),
        _regrouped(d, u, v, (b, c, x), (y, a, dd)),
        _regrouped(d, u, v, (c, a, x), (y, b, dd)),
    ]


def ihx_relation(d: UniTrivalentDiagram, dart: int) -> DiagramCombination:
    return DiagramCombination.sum_diagrams((t, 1) for t in ihx_terms(d, dart))


def internal_edges(d: UniTrivalentDiagram) -> List[int]:
    """One dart per edge joining two distinct trivalent vertices."""
    vo = d.vertex_of
    out = []
    for a, b in d.edges:
        u, v = vo[a], vo[b]
        if u != v and len(d.vertices[u]) == 3 and len(d.vertices[v]) == 3:
            out.append(a)
    return out


def ihx_relations(basis: Sequence[CanonicalDiagram]) -> List[DiagramCombination]:
    rels = []
    for cd in basis:
        for dart in internal_edges(cd.rep):
            r = ihx_relation(cd.rep, dart)
            if r:
                rels.append(r)
    return rels


# ---------------------------------------------------------------------------
# exact sparse row reduction
# ---------------------------------------------------------------------------


def _content(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    return {k: v // g for k, v in row.items()}


def _combine(a: int, row: Dict[int, int], b: int, other: Dict[int, int]) -> Dict[int, int]:
    """``a*row - b*other`` with zeros dropped."""
    out = {k: a * v for k, v in row.items()}
    for k, v in other.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


class SparseEchelon:
    """Integer rows kept in reduced echelon form (each pivot column appears in one row)."""

    def __init__(self):
        self.rows: Dict[int, Dict[int, int]] = {}

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        row = {k: v for k, v in row.items() if v}
        for p in sorted(set(row) & set(self.rows)):
            if p not in row:
                continue
            prow = self.rows[p]
            a, b = prow[p], row[p]
            g = gcd(a, b)
            row = _combine(a // g, row, b // g, prow)
            if row:
                row = _content(row)
        return row

    def add(self, row: Dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        row = _content(row)
        for q in list(self.rows):
            other = self.rows[q]
            if p in other:
                a, b = row[p], other[p]
                g = gcd(a, b)
                self.rows[q] = _content(_combine(a // g, other, b // g, row))
        self.rows[p] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce_rational(self, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        for p in sorted(set(vec) & set(self.rows)):
            f = vec[p] / self.rows[p][p]
            for k, v in self.rows[p].items():
                nv = vec.get(k, Fraction(0)) - f * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return vec


class QuotientSpace:
    """Degree-``n`` trivalent graphs modulo AS and IHX."""

    def __init__(self, degree: int):
        self.degree = degree
        self.ambient_basis: Tuple[CanonicalDiagram, ...] = enumerate_trivalent(degree)
        self.index = {cd: i for i, cd in enumerate(self.ambient_basis)}
        self.echelon = SparseEchelon()
        self.relations = ihx_relations(self.ambient_basis)
        for rel in self.relations:
            self.echelon.add(self.vector(rel, integral=True))
        piv = set(self.echelon.pivots())
        self.free_columns = [i for i in range(len(self.ambient_basis)) if i not in piv]

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_basis)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def quotient_dim(self) -> int:
        return self.ambient_dim - self.rank

    def quotient_basis(self) -> List[CanonicalDiagram]:
        """Basis graphs whose classes form a basis of the quotient."""
        return [self.ambient_basis[i] for i in self.free_columns]

    def vector(self, x: DiagramCombination, integral: bool = False) -> Dict[int, Fraction]:
        out = {}
        for cd, c in x:
            if cd.degree != self.degree or cd.legs or cd.circles:
                raise DegreeError(
                    f"term of degree {cd.degree} with {cd.legs} legs and {cd.circles} circles "
                    f"does not live in the degree-{self.degree} graph space"
                )
            i = self.index.get(cd)
            if i is None:
                raise KeyError("diagram missing from ambient basis")
            if integral:
                if c.denominator != 1:
                    raise ValueError("integral vector expected")
                out[i] = int(c)
            else:
                out[i] = c
        return out

    def coordinates(self, x: DiagramCombination) -> List[Fraction]:
        red = self.echelon.reduce_rational(self.vector(x))
        return [red.get(i, Fraction(0)) for i in self.free_columns]

    def is_zero(self, x: DiagramCombination) -> bool:
        return not any(self.coordinates(x))

    def equal_mod_relations(self, x: DiagramCombination, y: DiagramCombination) -> bool:
        return self.is_zero(x - y)

    def map_rank(self, images: Iterable[DiagramCombination]) -> int:
        vecs = [self.coordinates(x) for x in images]
        return rank_of(vecs) if vecs else 0

    def from_coordinates(self, coords: Sequence) -> DiagramCombination:
        if len(coords) != len(self.free_columns):
            raise ValueError("coordinate vector has the wrong length")
        return DiagramCombination({self.ambient_basis[i]: c for i, c in zip(self.free_columns, coords)})

    def summary(self) -> dict:
        return {
            "degree": self.degree,
            "ambient": self.ambient_dim,
            "rank": self.rank,
            "quotient_dim": self.quotient_dim,
        }


@lru_cache(maxsize=None)
def quotient_space(n: int) -> QuotientSpace:
    if not 0 <= n <= MAX_DEGREE:
        raise DegreeError(f"degree {n} outside supported range 0..{MAX_DEGREE}")
    return QuotientSpace(n)


def coordinates(x: DiagramCombination, space: QuotientSpace) -> List[Fraction]:
    return space.coordinates(x)


def map_rank(images: Iterable[DiagramCombination], space: QuotientSpace) -> int:
    return space.map_rank(images)
