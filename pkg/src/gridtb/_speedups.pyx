# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: exact sparse linear algebra and circle tracing.

Behaviourally identical to gridtb._speedups_py; coefficients stay
arbitrary-precision Python ints, the speedup comes from typed loops and
C-level bookkeeping in the hot paths.
"""

from fractions import Fraction

from cpython.list cimport PyList_GET_SIZE

IMPLEMENTATION = "cython"


def union_circles(int n_arcs, joins):
    cdef list parent = list(range(n_arcs))
    cdef int i, a, b, ra, rb, root, arc
    cdef int njoins = PyList_GET_SIZE(joins) if isinstance(joins, list) else len(joins)

    for i in range(0, njoins, 2):
        a = joins[i]
        b = joins[i + 1]
        ra = a
        while parent[ra] != ra:
            ra = parent[ra]
        rb = b
        while parent[rb] != rb:
            rb = parent[rb]
        # path compression
        while parent[a] != ra:
            parent[a], a = ra, parent[a]
        while parent[b] != rb:
            parent[b], b = rb, parent[b]
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    cdef list labels = [0] * n_arcs
    mapping = {}
    for arc in range(n_arcs):
        root = arc
        while parent[root] != root:
            root = parent[root]
        if root not in mapping:
            mapping[root] = len(mapping)
        labels[arc] = mapping[root]
    return len(mapping), labels


def rank_exact(rows, int ncols):
    cdef list work = [dict(row0) for row0 in rows if row0]
    cdef int rank = 0
    cdef int pivot_idx, best, score, i
    cdef object pivot_col, col, val, mult, pv, new

    while True:
        pivot_idx = -1
        pivot_col = -1
        best = -1
        for i in range(len(work)):
            row = work[i]
            for col, val in row.items():
                if val == 1 or val == -1:
                    score = len(row)
                    if best < 0 or score < best:
                        best = score
                        pivot_idx = i
                        pivot_col = col
            if best == 1:
                break
        if pivot_idx < 0:
            break
        rank += 1
        prow = work.pop(pivot_idx)
        pval = prow[pivot_col]
        nxt = []
        for row in work:
            val = row.get(pivot_col)
            if val is not None:
                mult = -val * pval
                for col, pv in prow.items():
                    new = row.get(col, 0) + mult * pv
                    if new:
                        row[col] = new
                    else:
                        row.pop(col, None)
            if row:
                nxt.append(row)
        work = nxt

    if not work:
        return rank

    cols = sorted({c for row in work for c in row})
    col_index = {c: i for i, c in enumerate(cols)}
    cdef int m = len(work)
    cdef int n = len(cols)
    dense = [[Fraction(0)] * n for _ in range(m)]
    for i in range(m):
        for col, val in (<dict>work[i]).items():
            dense[i][col_index[col]] = Fraction(val)
    cdef int r = 0, j, k, p
    for j in range(n):
        p = -1
        for k in range(r, m):
            if dense[k][j]:
                p = k
                break
        if p < 0:
            continue
        dense[r], dense[p] = dense[p], dense[r]
        pivot = dense[r][j]
        for k in range(r + 1, m):
            if dense[k][j]:
                factor = dense[k][j] / pivot
                for i in range(j, n):
                    dense[k][i] -= factor * dense[r][i]
        r += 1
    return rank + r


def rank_mod2(bitrows):
    cdef int rank = 0
    pivots = {}
    for row in bitrows:
        cur = row
        while cur:
            low = cur & -cur
            other = pivots.get(low)
            if other is None:
                pivots[low] = cur
                rank += 1
                break
            cur ^= other
    return rank
