"""Pure-Python versions of the hot loops (matching closure and W resolution).

Darts are ``0..D-1``; ``partner`` is the edge involution as a list.  The
compiled module ``_kernels`` exposes the same two functions.
"""


def _splice(partner, join, removed):
    """Glue darts through ``join``; returns (new partner list, circles closed).

    ``removed`` darts are dropped from the result (their slot becomes -1).
    Chains that run only through glued darts close up into circles.
    """
    new = list(partner)
    circles = 0
    seen = set()
    for x in join:
        if x in seen:
            continue
        seen.add(x)
        cur = x
        closed = False
        while True:
            j = join[cur]
            seen.add(j)
            p = partner[j]
            if p == x:
                closed = True
                break
            if p in join:
                seen.add(p)
                cur = p
                continue
            end2 = p
            break
        if closed:
            circles += 1
            continue
        p = partner[x]
        while p in join:
            seen.add(p)
            j = join[p]
            seen.add(j)
            p = partner[j]
        end1 = p
        new[end1] = end2
        new[end2] = end1
    for x in removed:
        new[x] = -1
    return new, circles


def _matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(first, items[i])] + m


def close_all(partner, leg_darts):
    """All ``(2k-1)!!`` leg pairings: list of (new partner list, circles)."""
    legs = list(leg_darts)
    out = []
    for m in _matchings(legs):
        join = {}
        for a, b in m:
            join[a] = b
            join[b] = a
        out.append(_splice(partner, join, legs))
    return out


def _padd(p, q, sign):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += sign * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _w_rec(partner, cells, vert, alive, pick):
    if pick is None:
        u = next((i for i, a in enumerate(alive) if a), -1)
        if u < 0:
            return [1]
        cu = cells[u]
        r = 0
        while vert[partner[cu[r]]] == u:
            r += 1
    else:
        cands = [(i, r) for i, a in enumerate(alive) if a for r in range(3)
                 if vert[partner[cells[i][r]]] != i]
        if not cands:
            return [1]
        u, r = cands[pick(len(cands))]
        cu = cells[u]
    e, a, b = cu[r], cu[(r + 1) % 3], cu[(r + 2) % 3]
    e2 = partner[e]
    v = vert[e2]
    cv = cells[v]
    s = cv.index(e2)
    c, d = cv[(s + 1) % 3], cv[(s + 2) % 3]
    alive2 = list(alive)
    alive2[u] = alive2[v] = False
    removed = (e, a, b, e2, c, d)
    total = [0]
    for join, sign in (({a: d, d: a, b: c, c: b}, 1), ({a: c, c: a, b: d, d: b}, -1)):
        new, circ = _splice(partner, join, removed)
        sub = _w_rec(new, cells, vert, alive2, pick)
        total = _padd(total, [0] * circ + sub, sign)
    return total


def w_poly(partner, cells, pick=None):
    """W polynomial (coefficients of c^0, c^1, ...) of a leg-free, circle-free diagram.

    ``pick(n)`` optionally chooses which of the ``n`` resolvable (vertex, edge)
    slots to use next; the default resolves an edge at the lowest live vertex.
    """
    vert = [-1] * len(partner)
    for i, cell in enumerate(cells):
        if len(cell) != 3:
            raise ValueError("W is only defined on diagrams without legs")
        for x in cell:
            vert[x] = i
    return _w_rec(list(partner), [tuple(c) for c in cells], vert, [True] * len(cells), pick)
