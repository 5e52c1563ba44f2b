"""Uni-trivalent diagrams, their canonical forms modulo antisymmetry, and
formal rational combinations of them.

A diagram is stored through its darts (half-edges).  ``vertices`` is a tuple
of cells: a 1-tuple is a univalent vertex (a leg), a 3-tuple is a trivalent
vertex listed in its cyclic order.  ``edges`` pairs the darts.  ``circles``
counts vertex-free circle components, which closures produce.

Canonical form.  Two diagrams on the same underlying multigraph differ by the
sign ``(-1)^(number of reversed vertices)`` once an isomorphism is fixed.  The
canonical key is therefore a canonical form of the underlying multigraph
(computed per connected component by individualization/refinement); the sign
is read off by transporting the cyclic orders through a canonical dart
labeling.  If two canonical labelings disagree on the sign the diagram has an
orientation-reversing automorphism and is zero.

Orientation convention of canonical representatives: the vertex with
canonical index ``i`` lists its darts in increasing order when ``i`` is even
and in decreasing order when ``i`` is odd.  With this choice the canonical
theta graph is the planar one, whose closure weight is ``c^2 - c``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .exactnum import as_fraction, format_fraction


class DiagramError(ValueError):
    """Malformed dart structure."""


@dataclass(frozen=True)
class UniTrivalentDiagram:
    vertices: tuple
    edges: tuple
    circles: int = 0

    def __post_init__(self):
        verts = tuple(tuple(int(d) for d in cell) for cell in self.vertices)
        edges = tuple(tuple(int(d) for d in e) for e in self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if self.circles < 0:
            raise DiagramError("circle count must be non-negative")
        seen = set()
        for cell in verts:
            if len(cell) not in (1, 3):
                raise DiagramError(f"vertex {cell} has valency {len(cell)}; only 1 and 3 are allowed")
            for d in cell:
                if d in seen:
                    raise DiagramError(f"dart {d} appears in two vertex cells")
                seen.add(d)
        paired = set()
        for e in edges:
            if len(e) != 2 or e[0] == e[1]:
                raise DiagramError(f"edge {e} must join two distinct darts")
            for d in e:
                if d in paired:
                    raise DiagramError(f"dart {d} lies on two edges")
                paired.add(d)
        if paired != seen:
            raise DiagramError("edge pairing does not cover exactly the vertex darts")

    # -- structure ---------------------------------------------------------
    @cached_property
    def partner(self) -> Dict[int, int]:
        p = {}
        for a, b in self.edges:
            p[a] = b
            p[b] = a
        return p

    @cached_property
    def vertex_of(self) -> Dict[int, int]:
        return {d: i for i, cell in enumerate(self.vertices) for d in cell}

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def legs(self) -> int:
        return sum(1 for cell in self.vertices if len(cell) == 1)

    @cached_property
    def trivalent(self) -> int:
        return sum(1 for cell in self.vertices if len(cell) == 3)

    @property
    def degree(self) -> int:
        # every component has an even number of vertices (3t + u is even)
        return len(self.vertices) // 2

    def leg_darts(self) -> List[int]:
        return [cell[0] for cell in self.vertices if len(cell) == 1]

    def components(self) -> List[List[int]]:
        """Vertex-index lists of the connected components (circles excluded)."""
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        vo = self.vertex_of
        for a, b in self.edges:
            ra, rb = find(vo[a]), find(vo[b])
            if ra != rb:
                parent[ra] = rb
        groups: Dict[int, List[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return [groups[r] for r in sorted(groups, key=lambda r: min(groups[r]))]

    # -- transformations ---------------------------------------------------
    def relabel(self, mapping: Dict[int, int]) -> "UniTrivalentDiagram":
        return UniTrivalentDiagram(
            tuple(tuple(mapping[d] for d in cell) for cell in self.vertices),
            tuple((mapping[a], mapping[b]) for a, b in self.edges),
            self.circles,
        )

    def compact(self) -> "UniTrivalentDiagram":
        """Relabel darts to ``0..D-1`` in vertex order."""
        mapping = {}
        for cell in self.vertices:
            for d in cell:
                mapping[d] = len(mapping)
        return self.relabel(mapping)

    def with_circles(self, circles: int) -> "UniTrivalentDiagram":
        return UniTrivalentDiagram(self.vertices, self.edges, circles)

    def flip_vertex(self, index: int) -> "UniTrivalentDiagram":
        """Reverse the cyclic order at one trivalent vertex."""
        cell = self.vertices[index]
        if len(cell) != 3:
            raise DiagramError("only trivalent vertices carry a cyclic order")
        verts = list(self.vertices)
        verts[index] = (cell[0], cell[2], cell[1])
        return UniTrivalentDiagram(tuple(verts), self.edges, self.circles)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "circles": self.circles,
            "vertices": [list(cell) for cell in self.vertices],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data) -> "UniTrivalentDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                tuple(tuple(cell) for cell in data["vertices"]),
                tuple(tuple(e) for e in data["edges"]),
                int(data.get("circles", 0)),
            )
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc


EMPTY = UniTrivalentDiagram((), (), 0)


def wheel(n: int) -> UniTrivalentDiagram:
    """The wheel with ``n`` legs: an ``n``-cycle of trivalent vertices, one leg each.

    Hub vertex ``i`` has darts ``(prev, leg, next)``; all hub vertices share the
    same rotation sense in the planar picture.
    """
    if n <= 0:
        raise DiagramError("a wheel needs at least one leg")
    verts = []
    edges = []
    # hub vertex i: darts 3i (prev), 3i+1 (leg), 3i+2 (next); leg vertex dart 3n+i
    for i in range(n):
        verts.append((3 * i, 3 * i + 1, 3 * i + 2))
    for i in range(n):
        verts.append((3 * n + i,))
        edges.append((3 * i + 1, 3 * n + i))
        edges.append((3 * i + 2, 3 * ((i + 1) % n)))
    return UniTrivalentDiagram(tuple(verts), tuple(edges))


def interval() -> UniTrivalentDiagram:
    return UniTrivalentDiagram(((0,), (1,)), ((0, 1),))


def theta() -> UniTrivalentDiagram:
    """The planar theta graph (equal to the closure of the 2-wheel)."""
    return UniTrivalentDiagram(((0, 1, 2), (3, 5, 4)), ((0, 3), (1, 4), (2, 5)))


def circle() -> UniTrivalentDiagram:
    return UniTrivalentDiagram((), (), 1)


def disjoint_union(a: UniTrivalentDiagram, b: UniTrivalentDiagram) -> UniTrivalentDiagram:
    a = a.compact()
    off = sum(len(cell) for cell in a.vertices)
    b = b.compact()
    verts = a.vertices + tuple(tuple(d + off for d in cell) for cell in b.vertices)
    edges = a.edges + tuple((x + off, y + off) for x, y in b.edges)
    return UniTrivalentDiagram(verts, edges, a.circles + b.circles)


def union_all(parts: Iterable[UniTrivalentDiagram]) -> UniTrivalentDiagram:
    out = EMPTY
    for p in parts:
        out = disjoint_union(out, p)
    return out


# ---------------------------------------------------------------------------
# component classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentReport:
    legs: int
    trivalent: int
    is_interval: bool
    is_wheel: bool

    @property
    def trivalent_excess(self) -> int:
        return self.trivalent - self.legs


def component_classification(d: UniTrivalentDiagram) -> List[ComponentReport]:
    """One report per connected component (bare circles are not reported)."""
    out = []
    vo = d.vertex_of
    for comp in d.components():
        cells = [d.vertices[v] for v in comp]
        legs = sum(1 for c in cells if len(c) == 1)
        tri = len(cells) - legs
        is_interval = tri == 0 and legs == 2
        is_wheel = False
        if tri > 0 and tri == legs:
            is_wheel = True
            for v in comp:
                cell = d.vertices[v]
                if len(cell) == 3:
                    nleg = sum(1 for x in cell if len(d.vertices[vo[d.partner[x]]]) == 1)
                    if nleg != 1:
                        is_wheel = False
                        break
        out.append(ComponentReport(legs, tri, is_interval, is_wheel))
    return out


def in_b_prime(d: UniTrivalentDiagram) -> bool:
    return d.circles == 0 and not any(r.is_interval for r in component_classification(d))


def in_b_wheels(d: UniTrivalentDiagram) -> bool:
    return d.circles == 0 and all(r.is_wheel for r in component_classification(d))


def in_b_double_prime(d: UniTrivalentDiagram) -> bool:
    return any(r.trivalent_excess > 0 for r in component_classification(d))


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalDiagram:
    """Isomorphism class modulo AS; ``rep`` is the canonical representative."""

    key: tuple
    degree: int = field(compare=False)
    legs: int = field(compare=False)
    rep: UniTrivalentDiagram = field(compare=False, repr=False)

    @property
    def circles(self) -> int:
        return self.key[0]

    def __lt__(self, other: "CanonicalDiagram") -> bool:
        return self.key < other.key


def _refine(colors: List[int], nbrs: List[List[Tuple[int, int]]]) -> List[int]:
    n = len(colors)
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in nbrs[v]))) for v in range(n)]
        uniq = sorted(set(sigs))
        if len(uniq) == ncol:
            rank = {s: i for i, s in enumerate(uniq)}
            return [rank[s] for s in sigs]
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        ncol = len(uniq)


def _canonical_labelings(types: List[int], edge_ends: List[Tuple[int, int]]):
    """Minimal encoding of a connected multigraph and all labelings reaching it."""
    n = len(types)
    mult: Dict[Tuple[int, int], int] = Counter()
    for u, v in edge_ends:
        mult[(u, v) if u < v else (v, u)] += 1
    nbrs: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), m in mult.items():
        nbrs[u].append((v, m))
        nbrs[v].append((u, m))
    best = None
    leaves: List[List[int]] = []

    def encode(lab):
        inv = [0] * n
        for v, i in enumerate(lab):
            inv[i] = v
        t = tuple(types[inv[i]] for i in range(n))
        es = sorted((lab[u], lab[v]) if lab[u] < lab[v] else (lab[v], lab[u]) for u, v in edge_ends)
        return (t, tuple(es))

    def search(colors):
        nonlocal best, leaves
        colors = _refine(colors, nbrs)
        counts = Counter(colors)
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            enc = encode(colors)
            if best is None or enc < best:
                best = enc
                leaves = [colors]
            elif enc == best:
                leaves.append(colors)
            return
        for v in range(n):
            if colors[v] == target:
                search([2 * c + (0 if w == v else 1) for w, c in enumerate(colors)])

    search(list(types))
    return best, leaves


def _component_canon(d: UniTrivalentDiagram, comp: List[int]):
    """Canonicalize one connected component; returns (encoding, rep_cells, sign) or None."""
    local = {v: i for i, v in enumerate(comp)}
    vo = d.vertex_of
    partner = d.partner
    types = [len(d.vertices[v]) for v in comp]
    # each edge once, recorded with its darts
    edge_darts = []
    for v in comp:
        for x in d.vertices[v]:
            y = partner[x]
            if x < y:
                edge_darts.append((x, y))
    edge_ends = []
    for x, y in edge_darts:
        u, w = local[vo[x]], local[vo[y]]
        if u == w:
            return None  # self-loop at a trivalent vertex: AS forces zero
        edge_ends.append((u, w))
    enc, leaves = _canonical_labelings(types, edge_ends)

    sign = None
    for lab in leaves:
        order = sorted(
            range(len(edge_darts)),
            key=lambda k: (min(lab[edge_ends[k][0]], lab[edge_ends[k][1]]), max(lab[edge_ends[k][0]], lab[edge_ends[k][1]])),
        )
        newd = {}
        for pos, k in enumerate(order):
            x, y = edge_darts[k]
            if lab[local[vo[x]]] < lab[local[vo[y]]]:
                newd[x], newd[y] = 2 * pos, 2 * pos + 1
            else:
                newd[y], newd[x] = 2 * pos, 2 * pos + 1
        s = 1
        for v in comp:
            cell = d.vertices[v]
            if len(cell) == 3:
                a, b, c = (newd[x] for x in cell)
                # a cyclic rotation of an increasing triple is even
                even = (a < b < c) or (b < c < a) or (c < a < b)
                if not even:
                    s = -s
                if lab[local[v]] & 1:
                    s = -s
        if sign is None:
            sign = s
        elif s != sign:
            return None
    types_l, edges_l = enc
    cells = []
    darts_at: List[List[int]] = [[] for _ in types_l]
    for pos, (u, w) in enumerate(edges_l):
        darts_at[u].append(2 * pos)
        darts_at[w].append(2 * pos + 1)
    for i, ds in enumerate(darts_at):
        ds = sorted(ds)
        if len(ds) == 3 and i & 1:
            ds = ds[::-1]
        cells.append(tuple(ds))
    return enc, cells, len(edges_l), sign


@lru_cache(maxsize=200_000)
def canonicalize(d: UniTrivalentDiagram) -> Optional[Tuple[CanonicalDiagram, int]]:
    """Canonical class and sign of ``d``, or ``None`` when AS forces it to vanish."""
    comps = []
    sign = 1
    for comp in d.components():
        res = _component_canon(d, comp)
        if res is None:
            return None
        enc, cells, nedges, s = res
        sign *= s
        comps.append((enc, cells, nedges))
    comps.sort(key=lambda t: t[0])
    verts = []
    edges = []
    off = 0
    for enc, cells, nedges in comps:
        verts.extend(tuple(x + off for x in cell) for cell in cells)
        edges.extend((off + 2 * k, off + 2 * k + 1) for k in range(nedges))
        off += 2 * nedges
    key = (d.circles, tuple(enc for enc, _, _ in comps))
    rep = UniTrivalentDiagram(tuple(verts), tuple(edges), d.circles)
    return CanonicalDiagram(key, rep.degree, rep.legs, rep), sign


def canonical_of(d: UniTrivalentDiagram) -> CanonicalDiagram:
    """Canonical class of a diagram known to be nonzero."""
    res = canonicalize(d)
    if res is None:
        raise DiagramError("diagram vanishes by antisymmetry")
    return res[0]


# ---------------------------------------------------------------------------
# combinations
# ---------------------------------------------------------------------------


class DiagramCombination:
    """Finite formal sum of canonical diagrams with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[CanonicalDiagram, Fraction]] = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[k] = c
        self._terms = clean

    @classmethod
    def from_diagram(cls, d: UniTrivalentDiagram, coeff=1) -> "DiagramCombination":
        res = canonicalize(d)
        if res is None:
            return cls()
        cd, s = res
        return cls({cd: s * as_fraction(coeff)})

    @classmethod
    def sum_diagrams(cls, items: Iterable[Tuple[UniTrivalentDiagram, object]]) -> "DiagramCombination":
        acc: Dict[CanonicalDiagram, Fraction] = {}
        for d, c in items:
            res = canonicalize(d)
            if res is None:
                continue
            cd, s = res
            acc[cd] = acc.get(cd, Fraction(0)) + s * as_fraction(c)
        return cls(acc)

    @classmethod
    def one(cls) -> "DiagramCombination":
        return cls.from_diagram(EMPTY)

    # -- access ------------------------------------------------------------
    def items(self) -> List[Tuple[CanonicalDiagram, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def __iter__(self) -> Iterator[Tuple[CanonicalDiagram, Fraction]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, cd: CanonicalDiagram) -> Fraction:
        return self._terms.get(cd, Fraction(0))

    def coeff_of(self, d: UniTrivalentDiagram) -> Fraction:
        """Coefficient of the (signed) diagram ``d`` itself."""
        res = canonicalize(d)
        if res is None:
            raise DiagramError("diagram vanishes by antisymmetry")
        cd, s = res
        return s * self.coeff(cd)

    def degrees(self) -> List[int]:
        return sorted({cd.degree for cd in self._terms})

    def grade(self, n: int) -> "DiagramCombination":
        return DiagramCombination({k: c for k, c in self._terms.items() if k.degree == n})

    def filter(self, pred) -> "DiagramCombination":
        return DiagramCombination({k: c for k, c in self._terms.items() if pred(k)})

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "DiagramCombination") -> "DiagramCombination":
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return DiagramCombination(acc)

    def __neg__(self):
        return DiagramCombination({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "DiagramCombination":
        q = as_fraction(scalar)
        return DiagramCombination({k: q * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiagramCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def union(self, other: "DiagramCombination") -> "DiagramCombination":
        """Bilinear extension of the disjoint union."""
        acc: Dict[CanonicalDiagram, Fraction] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                res = canonicalize(disjoint_union(ka.rep, kb.rep))
                if res is None:
                    continue
                cd, s = res
                acc[cd] = acc.get(cd, Fraction(0)) + s * ca * cb
        return DiagramCombination(acc)

    def __repr__(self):
        if not self._terms:
            return "DiagramCombination(0)"
        inner = ", ".join(f"{format_fraction(c)}*<{cd.degree}/{cd.legs}/{cd.circles}>" for cd, c in self.items())
        return f"DiagramCombination({inner})"

    def to_json(self) -> list:
        return [{"coeff": format_fraction(c), "diagram": cd.rep.to_json()} for cd, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "DiagramCombination":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.sum_diagrams(
            (UniTrivalentDiagram.from_json(t["diagram"]), as_fraction(t["coeff"])) for t in data
        )
