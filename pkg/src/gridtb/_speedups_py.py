"""Pure-Python kernel: exact sparse linear algebra and circle tracing.

The compiled twin (gridtb._speedups, built from _speedups.pyx) exposes
the same three functions; gridtb.kernel picks one at import time.  Keep
the two implementations behaviourally identical: the test suite runs
them against each other whenever the compiled module is present.
"""

from fractions import Fraction

IMPLEMENTATION = "python"


def union_circles(n_arcs, joins):
    """Union arcs into circles; joins is a flat [a0,b0,a1,b1,...] list.

    Returns (circle_count, labels) where labels maps each arc to a
    circle id in 0..circle_count-1, numbered by smallest member arc.
    """
    parent = list(range(n_arcs))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for i in range(0, len(joins), 2):
        ra, rb = find(joins[i]), find(joins[i + 1])
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    labels = [0] * n_arcs
    mapping = {}
    for arc in range(n_arcs):
        root = find(arc)
        if root not in mapping:
            mapping[root] = len(mapping)
        labels[arc] = mapping[root]
    return len(mapping), labels


def rank_exact(rows, ncols):
    """Rank over the rationals of a sparse integer matrix.

    rows is a list of {column: coefficient} dicts.  Unit pivots are
    eliminated first with pure integer row operations; whatever is left
    falls back to exact rational elimination.
    """
    rows = [dict(r) for r in rows if r]
    rank = 0

    # phase 1: +-1 pivots keep everything integral and sparse
    while True:
        pivot_idx = -1
        pivot_col = -1
        best = None
        for i, row in enumerate(rows):
            for col, val in row.items():
                if val == 1 or val == -1:
                    # Markowitz-style: prefer short rows to limit fill-in
                    score = len(row)
                    if best is None or score < best:
                        best = score
                        pivot_idx, pivot_col = i, col
            if best == 1:
                break
        if pivot_idx < 0:
            break
        rank += 1
        prow = rows.pop(pivot_idx)
        pval = prow[pivot_col]
        for row in rows:
            val = row.get(pivot_col)
            if val is None:
                continue
            mult = -val * pval  # pval in {1,-1} so this clears the column
            for col, pv in prow.items():
                new = row.get(col, 0) + mult * pv
                if new:
                    row[col] = new
                else:
                    row.pop(col, None)
        rows = [r for r in rows if r]

    if not rows:
        return rank

    # phase 2: exact rational elimination on the residue
    cols = sorted({c for row in rows for c in row})
    col_index = {c: i for i, c in enumerate(cols)}
    dense = [[Fraction(0)] * len(cols) for _ in rows]
    for i, row in enumerate(rows):
        for c, v in row.items():
            dense[i][col_index[c]] = Fraction(v)
    r = 0
    for col in range(len(cols)):
        pivot = None
        for i in range(r, len(dense)):
            if dense[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        dense[r], dense[pivot] = dense[pivot], dense[r]
        pv = dense[r][col]
        for i in range(r + 1, len(dense)):
            if dense[i][col]:
                factor = dense[i][col] / pv
                for j in range(col, len(cols)):
                    dense[i][j] -= factor * dense[r][j]
        r += 1
    return rank + r


def rank_mod2(bitrows):
    """GF(2) rank of rows given as Python-int bitmasks."""
    rank = 0
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
