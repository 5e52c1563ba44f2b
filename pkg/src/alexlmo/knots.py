"""Knot input: Seifert matrices, PD codes, the Conway polynomial by the skein
relation, and Alexander polynomials in the symmetric normalization
(``A(t) = A(1/t)``, ``A(1) = 1``)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import (
    LaurentError,
    SymmetricLaurent,
    TruncatedSeries,
    as_fraction,
    determinant,
    nu_series,
    sinh_half_series,
    solve_linear,
)

MAX_CROSSINGS = 12


class KnotInputError(ValueError):
    """Malformed Seifert matrix or PD code."""


class CrossingBoundError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Conway polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConwayPolynomial:
    """``sum coeffs[k] z^k``."""

    coeffs: tuple = (1,)

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPolynomial(tuple(self[k] - other[k] for k in range(n)))

    def times_z(self, sign: int = 1) -> "ConwayPolynomial":
        return ConwayPolynomial((0,) + tuple(sign * c for c in self.coeffs))

    def is_knot_like(self) -> bool:
        return self[0] == 1 and all(c == 0 for c in self.coeffs[1::2])

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "ConwayPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(as_fraction(c) for c in data["coeffs"]))

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            body = str(mag) if k == 0 else (mono if mag == 1 else f"{mag}*{mono}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) if parts else "0"


ZERO = ConwayPolynomial(())
ONE = ConwayPolynomial((1,))


def conway_to_alexander(C: ConwayPolynomial) -> SymmetricLaurent:
    """Substitute ``z^2 = t - 2 + 1/t``."""
    if any(c for c in C.coeffs[1::2]):
        raise LaurentError(f"odd powers of z in {C}; only knot polynomials are supported")
    z2 = SymmetricLaurent(1, (1, -2, 1))
    result = SymmetricLaurent(0, (0,))
    power = SymmetricLaurent.one()
    for k in range(0, len(C.coeffs), 2):
        if C[k]:
            result = _laurent_add(result, _laurent_scale(power, C[k]))
        power = power * z2
    return result


def _laurent_add(a: SymmetricLaurent, b: SymmetricLaurent) -> SymmetricLaurent:
    d = max(a.span, b.span)
    return SymmetricLaurent(d, tuple(a.coeff(k) + b.coeff(k) for k in range(-d, d + 1)))


def _laurent_scale(a: SymmetricLaurent, q) -> SymmetricLaurent:
    return SymmetricLaurent(a.span, tuple(q * c for c in a.coeffs))


def renormalized_conway(C: ConwayPolynomial, order: int) -> TruncatedSeries:
    """``h/(e^{h/2}-e^{-h/2}) * C(e^{h/2}-e^{-h/2})``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return nu_series(order) * sinh_half_series(order).compose_polynomial(C.coeffs or (0,))


# ---------------------------------------------------------------------------
# Seifert matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeifertMatrix:
    rows: tuple

    def __post_init__(self):
        try:
            rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        except (TypeError, ValueError) as exc:
            raise KnotInputError("Seifert matrix entries must be integers") from exc
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise KnotInputError("Seifert matrix must be square")
        if n % 2:
            raise KnotInputError(f"Seifert matrix of a knot has even size, got {n}")
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if determinant(skew) != 1:
            raise KnotInputError("det(V - V^T) must be 1 for a knot Seifert matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def from_json(cls, data) -> "SeifertMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data.get("seifert", data.get("matrix"))
        if not isinstance(data, list):
            raise KnotInputError("expected a list of rows")
        return cls(tuple(tuple(r) for r in data))


def alexander_from_seifert(V: SeifertMatrix) -> SymmetricLaurent:
    """``det(t^{1/2} V - t^{-1/2} V^T)`` as a symmetric Laurent polynomial."""
    if not isinstance(V, SeifertMatrix):
        V = SeifertMatrix(tuple(tuple(r) for r in V))
    n = V.size
    if n == 0:
        return SymmetricLaurent.one()
    g = n // 2
    # t^{-g} det(t V - V^T); the determinant has degree <= 2g, fix it by 2g+1 values
    pts = list(range(n + 1))
    vals = [
        determinant([[t * V.rows[i][j] - V.rows[j][i] for j in range(n)] for i in range(n)])
        for t in pts
    ]
    poly = solve_linear([[Fraction(t) ** k for k in range(n + 1)] for t in pts], vals)
    try:
        A = SymmetricLaurent(g, tuple(poly))
    except LaurentError as exc:
        raise KnotInputError(f"Seifert matrix gives a non-symmetric polynomial: {exc}") from exc
    if A.value_at_one() != 1:
        raise KnotInputError("Alexander polynomial does not evaluate to 1 at t = 1")
    return A


# ---------------------------------------------------------------------------
# PD codes and the skein recursion
# ---------------------------------------------------------------------------

# A crossing is (in_under, out_under, in_over, out_over, sign), with arcs
# labelled so that each label leaves one crossing and enters another.
Crossing = Tuple[int, int, int, int, int]


def _auto_sign(x: Sequence[int]) -> int:
    i, j, k, l = x
    return 1 if (i == j or k == l or j - l == 1 or l - j > 1) else -1


@dataclass(frozen=True)
class PDCode:
    """Oriented knot diagram.

    Each crossing ``[i, j, k, l]`` lists arc labels counterclockwise from the
    incoming under-arc; the under strand runs ``i -> k``.  For a positive
    crossing the over strand runs ``l -> j``, otherwise ``j -> l``.
    """

    crossings: tuple
    signs: tuple

    def __post_init__(self):
        xs = tuple(tuple(int(a) for a in x) for x in self.crossings)
        if any(len(x) != 4 for x in xs):
            raise KnotInputError("every crossing needs four arc labels")
        if len(self.signs) != len(xs) or any(s not in (1, -1) for s in self.signs):
            raise KnotInputError("one sign (+1 or -1) per crossing")
        counts: Dict[int, int] = {}
        for x in xs:
            for a in x:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, c in counts.items() if c != 2)
        if bad:
            raise KnotInputError(f"arc labels must appear exactly twice, offending labels {bad}")
        object.__setattr__(self, "crossings", xs)
        object.__setattr__(self, "signs", tuple(self.signs))
        oriented = self.oriented()
        comps = _components(oriented, 0)
        if len(comps) > 1:
            raise KnotInputError(f"PD code describes a {len(comps)}-component link; only knots are supported")

    @classmethod
    def from_crossings(cls, crossings, signs="auto") -> "PDCode":
        xs = [tuple(x) for x in crossings]
        if signs == "auto" or signs is None:
            if any(len(x) != 4 for x in xs):
                raise KnotInputError("every crossing needs four arc labels")
            sg = tuple(_auto_sign(x) for x in xs)
        else:
            sg = tuple(int(s) for s in signs)
        return cls(tuple(xs), sg)

    @classmethod
    def from_json(cls, data) -> "PDCode":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"crossings": data}
        if not isinstance(data, dict) or "crossings" not in data:
            raise KnotInputError("PD JSON needs a 'crossings' list")
        return cls.from_crossings(data["crossings"], data.get("signs", "auto"))

    def oriented(self) -> List[Crossing]:
        out = []
        for (i, j, k, l), s in zip(self.crossings, self.signs):
            if s > 0:
                out.append((i, k, l, j, 1))
            else:
                out.append((i, k, j, l, -1))
        ins = [x for c in out for x in (c[0], c[2])]
        outs = [x for c in out for x in (c[1], c[3])]
        if sorted(ins) != sorted(set(ins)) or set(ins) != set(outs):
            raise KnotInputError("crossing orientations are inconsistent (an arc must leave once and enter once)")
        return out


def _components(xs: Sequence[Crossing], free: int) -> List[List[int]]:
    """Arc cycles; each is listed starting from its lowest-priority arc."""
    nxt = {}
    for iu, ou, io, oo, _ in xs:
        nxt[iu] = ou
        nxt[io] = oo
    seen = set()
    comps = []
    for a in nxt:
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = nxt[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = nxt[b]
        comps.append(cyc)
    return comps + [[] for _ in range(free)]


def _smooth(xs: List[Crossing], idx: int) -> Tuple[List[Crossing], int]:
    """Oriented smoothing of crossing ``idx``; returns remaining crossings and new free circles."""
    iu, ou, io, oo, _ = xs[idx]
    rest = xs[:idx] + xs[idx + 1:]
    circles = 0
    # strand entering along iu now leaves along oo, and io continues to ou
    ren = {}
    if iu == oo:
        circles += 1
    else:
        ren[oo] = iu
    if io == ou:
        circles += 1
    else:
        ren[ou] = io
    if ren:
        def r(a):
            while a in ren:
                a = ren[a]
            return a
        rest = [(r(a), r(b), r(c), r(d), s) for a, b, c, d, s in rest]
    return rest, circles


def _first_undercrossing(xs: List[Crossing], priority) -> Optional[int]:
    """Index of the first crossing met as under when walking components from their basepoints."""
    if not xs:
        return None
    nxt = {}
    at_in = {}
    for n, (iu, ou, io, oo, _) in enumerate(xs):
        nxt[iu] = ou
        nxt[io] = oo
        at_in[iu] = (n, "u")
        at_in[io] = (n, "o")
    comps = _components(xs, 0)
    starts = sorted((min(c, key=priority) for c in comps), key=priority)
    met = set()
    for a0 in starts:
        a = a0
        while True:
            n, role = at_in[a]
            if n not in met:
                if role == "u":
                    return n
                met.add(n)
            a = nxt[a]
            if a == a0:
                break
    return None


def _conway_rec(xs: List[Crossing], free: int, priority, memo) -> ConwayPolynomial:
    key = (tuple(sorted(xs)), free)
    hit = memo.get(key)
    if hit is not None:
        return hit
    idx = _first_undercrossing(xs, priority)
    if idx is None:
        ncomp = len(_components(xs, 0)) + free
        result = ONE if ncomp == 1 else ZERO
    else:
        iu, ou, io, oo, s = xs[idx]
        switched = list(xs)
        switched[idx] = (io, oo, iu, ou, -s)
        smoothed, circ = _smooth(xs, idx)
        a = _conway_rec(switched, free, priority, memo)
        b = _conway_rec(smoothed, free + circ, priority, memo)
        # C(L+) - C(L-) = z C(L0)
        result = a + b.times_z(s)
    memo[key] = result
    return result


def conway_from_pd(pd: PDCode, priority=None) -> ConwayPolynomial:
    """Conway polynomial by the skein relation and descending diagrams.

    ``priority`` maps arc labels to sort keys; it fixes basepoints and the
    component order (default: the labels themselves).
    """
    if not isinstance(pd, PDCode):
        pd = PDCode.from_crossings(pd)
    if len(pd.crossings) > MAX_CROSSINGS:
        raise CrossingBoundError(f"{len(pd.crossings)} crossings exceeds the bound of {MAX_CROSSINGS}")
    if priority is None:
        priority = lambda a: a
    return _conway_rec(pd.oriented(), 1 if not pd.crossings else 0, priority, {})


def alexander_from_pd(pd: PDCode) -> SymmetricLaurent:
    return conway_to_alexander(conway_from_pd(pd))


def validate_manifold_alexander(p) -> SymmetricLaurent:
    """Normalize ``p`` (``{exponent: coeff}`` or SymmetricLaurent) up to units ``+-q t^k``."""
    if isinstance(p, SymmetricLaurent):
        terms = p.as_dict()
    else:
        terms = {int(k): as_fraction(v) for k, v in dict(p).items() if as_fraction(v)}
    if not terms:
        raise LaurentError("zero polynomial")
    total = sum(terms.values(), Fraction(0))
    if total == 0:
        raise LaurentError("p(1) = 0: not the Alexander polynomial of a manifold with H_1 = Z")
    lo, hi = min(terms), max(terms)
    if (lo + hi) % 2:
        raise LaurentError("even span required: no shift t^k makes this symmetric")
    shift = (lo + hi) // 2
    span = (hi - lo) // 2
    cs = tuple(terms.get(k + shift, Fraction(0)) / total for k in range(-span, span + 1))
    if cs != cs[::-1]:
        raise LaurentError("polynomial is not symmetric up to a unit")
    return SymmetricLaurent(span, cs)


# ---------------------------------------------------------------------------
# bundled table
# ---------------------------------------------------------------------------

KNOT_TABLE = {
    "unknot": {
        "pd": [],
        "seifert": [],
        "conway": [1],
    },
    "trefoil": {
        "pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
        "seifert": [[-1, 1], [0, -1]],
        "conway": [1, 0, 1],
    },
    "figure8": {
        "pd": [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
        "seifert": [[1, 1], [0, -1]],
        "conway": [1, 0, -1],
    },
    "5_1": {
        "pd": [[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]],
        "seifert": [[-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 1], [0, 0, 0, -1]],
        "conway": [1, 0, 3, 0, 1],
    },
    "5_2": {
        "pd": [[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]],
        "seifert": [[-1, 1], [0, -2]],
        "conway": [1, 0, 2],
    },
    "6_1": {
        "pd": [[1, 4, 2, 5], [7, 10, 8, 11], [3, 9, 4, 8], [9, 3, 10, 2], [5, 12, 6, 1], [11, 6, 12, 7]],
        "seifert": [[1, 1], [0, -2]],
        "conway": [1, 0, -2],
    },
}

ALIASES = {"3_1": "trefoil", "4_1": "figure8", "figure-eight": "figure8", "0_1": "unknot"}


def knot_entry(name: str) -> dict:
    key = ALIASES.get(name, name)
    if key not in KNOT_TABLE:
        raise KeyError(f"unknown knot {name!r}; known: {', '.join(sorted(KNOT_TABLE))}")
    return KNOT_TABLE[key]


def knot_pd(name: str) -> PDCode:
    return PDCode.from_crossings(knot_entry(name)["pd"])


def knot_seifert(name: str) -> SeifertMatrix:
    return SeifertMatrix(tuple(tuple(r) for r in knot_entry(name)["seifert"]))


def knot_alexander(name: str) -> SymmetricLaurent:
    return alexander_from_seifert(knot_seifert(name))
