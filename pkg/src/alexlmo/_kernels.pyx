# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the matching closure and the W edge resolution.

Same results, in the same order, as ``_kernels_py``.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport int64_t


cdef int _splice(int* partner, int* join, int* jlist, int nj, int* out, int n) nogil:
    """Glue the darts in ``jlist`` through ``join`` (entries -1 elsewhere).

    Writes the new involution into ``out`` (glued darts become -1) and
    returns the number of closed circles.
    """
    cdef int i, x, cur, j, p, end1, end2, circles = 0
    cdef int* seen = <int*> malloc(n * sizeof(int))
    memcpy(out, partner, n * sizeof(int))
    for i in range(nj):
        seen[jlist[i]] = 0
    for i in range(nj):
        x = jlist[i]
        if seen[x]:
            continue
        seen[x] = 1
        cur = x
        end2 = -1
        while True:
            j = join[cur]
            seen[j] = 1
            p = partner[j]
            if p == x:
                break
            if join[p] >= 0:
                seen[p] = 1
                cur = p
                continue
            end2 = p
            break
        if end2 < 0:
            circles += 1
            continue
        p = partner[x]
        while join[p] >= 0:
            seen[p] = 1
            j = join[p]
            seen[j] = 1
            p = partner[j]
        end1 = p
        out[end1] = end2
        out[end2] = end1
    for i in range(nj):
        out[jlist[i]] = -1
    free(seen)
    return circles


cdef void _match_rec(int* partner, int n, int* legs, int nlegs, int* used, int* join,
                     int* out, list results):
    cdef int first = -1, i, k, circ
    for i in range(nlegs):
        if not used[i]:
            first = i
            break
    if first < 0:
        circ = _splice(partner, join, legs, nlegs, out, n)
        results.append(([out[k] for k in range(n)], circ))
        return
    used[first] = 1
    for i in range(first + 1, nlegs):
        if used[i]:
            continue
        used[i] = 1
        join[legs[first]] = legs[i]
        join[legs[i]] = legs[first]
        _match_rec(partner, n, legs, nlegs, used, join, out, results)
        join[legs[first]] = -1
        join[legs[i]] = -1
        used[i] = 0
    used[first] = 0


def close_all(partner, leg_darts):
    """All ``(2k-1)!!`` leg pairings: list of (new partner list, circles)."""
    cdef int n = len(partner), nlegs = len(leg_darts), i
    cdef int* p = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* out = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* join = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* legs = <int*> malloc(max(nlegs, 1) * sizeof(int))
    cdef int* used = <int*> malloc(max(nlegs, 1) * sizeof(int))
    results = []
    try:
        for i in range(n):
            p[i] = partner[i]
            join[i] = -1
        for i in range(nlegs):
            legs[i] = leg_darts[i]
            used[i] = 0
        if nlegs % 2 == 0:
            _match_rec(p, n, legs, nlegs, used, join, out, results)
    finally:
        free(p); free(out); free(join); free(legs); free(used)
    return results


cdef struct WState:
    int n
    int nv
    int* cells      # nv * 3
    int* vert       # n
    int* alive      # nv
    int* buf        # (nv // 2 + 1) * n partner copies
    int* join       # n, all -1 between uses
    int64_t* acc    # coefficient accumulator
    int acc_len


cdef void _w_rec(WState* st, int level, int circ, int sign) nogil:
    cdef int n = st.n
    cdef int* partner = st.buf + level * n
    cdef int* nxt = st.buf + (level + 1) * n
    cdef int u = -1, i, r, e, a, b, e2, v, s, c, d, k, got
    cdef int jl[4]
    for i in range(st.nv):
        if st.alive[i]:
            u = i
            break
    if u < 0:
        st.acc[circ] += sign
        return
    r = 0
    while st.vert[partner[st.cells[3 * u + r]]] == u:
        r += 1
    e = st.cells[3 * u + r]
    a = st.cells[3 * u + (r + 1) % 3]
    b = st.cells[3 * u + (r + 2) % 3]
    e2 = partner[e]
    v = st.vert[e2]
    s = 0
    while st.cells[3 * v + s] != e2:
        s += 1
    c = st.cells[3 * v + (s + 1) % 3]
    d = st.cells[3 * v + (s + 2) % 3]
    st.alive[u] = 0
    st.alive[v] = 0
    jl[0] = a; jl[1] = b; jl[2] = c; jl[3] = d
    for k in range(2):
        if k == 0:
            st.join[a] = d; st.join[d] = a; st.join[b] = c; st.join[c] = b
        else:
            st.join[a] = c; st.join[c] = a; st.join[b] = d; st.join[d] = b
        got = _splice(partner, st.join, jl, 4, nxt, n)
        nxt[e] = -1
        nxt[e2] = -1
        st.join[a] = -1; st.join[b] = -1; st.join[c] = -1; st.join[d] = -1
        _w_rec(st, level + 1, circ + got, sign if k == 0 else -sign)
    st.alive[u] = 1
    st.alive[v] = 1


def w_poly(partner, cells, pick=None):
    """W polynomial (coefficients of c^0, c^1, ...) of a leg-free, circle-free diagram."""
    # coefficients are bounded by 2^(vertices/2); beyond 120 vertices use Python ints
    if pick is not None or len(cells) > 120:
        from ._kernels_py import w_poly as py_w_poly
        return py_w_poly(partner, cells, pick)
    cdef WState st
    cdef int i, r, x
    st.n = len(partner)
    st.nv = len(cells)
    for cell in cells:
        if len(cell) != 3:
            raise ValueError("W is only defined on diagrams without legs")
    if st.nv == 0:
        return [1]
    st.acc_len = st.n + 2
    st.cells = <int*> malloc(3 * st.nv * sizeof(int))
    st.vert = <int*> malloc(st.n * sizeof(int))
    st.alive = <int*> malloc(st.nv * sizeof(int))
    st.buf = <int*> malloc((st.nv // 2 + 2) * st.n * sizeof(int))
    st.join = <int*> malloc(st.n * sizeof(int))
    st.acc = <int64_t*> malloc(st.acc_len * sizeof(int64_t))
    try:
        for i in range(st.n):
            st.vert[i] = -1
            st.join[i] = -1
            st.buf[i] = partner[i]
        for i in range(st.nv):
            st.alive[i] = 1
            for r in range(3):
                x = cells[i][r]
                st.cells[3 * i + r] = x
                st.vert[x] = i
        for i in range(st.acc_len):
            st.acc[i] = 0
        with nogil:
            _w_rec(&st, 0, 0, 1)
        out = [int(st.acc[i]) for i in range(st.acc_len)]
    finally:
        free(st.cells); free(st.vert); free(st.alive); free(st.buf); free(st.join); free(st.acc)
    top = len(out)
    while top > 1 and out[top - 1] == 0:
        top -= 1
    return out[:top]
