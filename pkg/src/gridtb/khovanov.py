"""sl2 Khovanov homology over the rationals (default) or GF(2).

Conventions match the Knot Atlas tables: the unknot has Kh = q + q^-1;
for a diagram with n+ positive and n- negative crossings, a resolution
v in {0,1}^c sits in homological degree i = |v| - n- and a generator
with circle labels of total degree d has quantum degree
j = d + |v| + n+ - 2 n-.  The 0-smoothing of X[a,b,c,d] joins the arc
pairs (a,b) and (c,d); the 1-smoothing joins (a,d) and (b,c).

Two engines: "naive" builds the full cube of resolutions and extracts
ranks per bidegree by exact elimination; "scan" tensors one crossing at
a time, delooping closed circles and cancelling invertible differential
entries as it goes (see khscan).  They agree exactly; the naive engine
is the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from . import kernel
from .diagram import LinkDiagram
from .errors import (CrossingLimitExceeded, EmptyTable, FieldUnsupported,
                     MemoryBudgetExceeded)
from .laurent import LaurentPoly2

SCAN_CROSSING_LIMIT = 20
NAIVE_CROSSING_LIMIT = 10
GENERATOR_BUDGET = 4_000_000

_FIELDS = ("rational", "f2")


@dataclass(frozen=True)
class KhTable:
    """Bigraded rank table; ranks[(i, j)] >= 1 for stored entries."""
    ranks: Dict[Tuple[int, int], int]
    coefficients: str = "rational"
    crossings: int = 0
    positive: int = 0
    negative: int = 0

    def poincare(self) -> LaurentPoly2:
        """Poincare polynomial in (q, t)."""
        return LaurentPoly2({(j, i): r for (i, j), r in self.ranks.items()},
                            variables=("q", "t"))

    def graded_euler(self) -> LaurentPoly2:
        """Graded Euler characteristic in q (equals the Jones polynomial)."""
        terms: Dict[Tuple[int, int], int] = {}
        for (i, j), r in self.ranks.items():
            key = (j, 0)
            terms[key] = terms.get(key, 0) + (r if i % 2 == 0 else -r)
        return LaurentPoly2(terms, variables=("q", "t"))

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def triples(self) -> List[Tuple[int, int, int]]:
        """Sorted (i, j, rank) triples; the serialization form."""
        return sorted((i, j, r) for (i, j), r in self.ranks.items())

    def mirror_reflection(self) -> "KhTable":
        """The table with (i, j) -> (-i, -j); Kh of the mirror diagram."""
        return KhTable({(-i, -j): r for (i, j), r in self.ranks.items()},
                       self.coefficients, self.crossings,
                       self.negative, self.positive)


def kh_tb_bound(table: KhTable) -> int:
    """min-deg_q of Kh(q, t/q): the Thurston-Bennequin upper bound."""
    if not table.ranks:
        raise EmptyTable("no ranks in Khovanov table")
    return min(j - i for (i, j) in table.ranks)


def kh_breadth(table: KhTable) -> int:
    """breadth_q of Kh(q, t/q): the arc-index lower bound."""
    if not table.ranks:
        raise EmptyTable("no ranks in Khovanov table")
    diffs = [j - i for (i, j) in table.ranks]
    return max(diffs) - min(diffs)


def khovanov(diagram: LinkDiagram, coefficients: str = "rational",
             mode: str = "scan", limit: int | None = None,
             budget: int = GENERATOR_BUDGET) -> KhTable:
    """Khovanov homology ranks of an oriented link diagram."""
    if coefficients not in _FIELDS:
        raise FieldUnsupported(f"unsupported coefficients {coefficients!r}")
    if mode not in ("scan", "naive"):
        raise ValueError(f"unknown mode {mode!r}")
    if limit is None:
        limit = SCAN_CROSSING_LIMIT if mode == "scan" else NAIVE_CROSSING_LIMIT
    if diagram.crossing_count() > limit:
        raise CrossingLimitExceeded(
            f"{diagram.crossing_count()} crossings exceeds the {mode} limit {limit}")

    # split into crossing-connected pieces; tables convolve over splits
    pieces = _connected_pieces(diagram)
    tables: List[Dict[Tuple[int, int], int]] = []
    for piece in pieces:
        if mode == "naive":
            tables.append(_naive_connected(piece, coefficients, budget))
        else:
            from .khscan import scan_connected
            tables.append(scan_connected(piece, coefficients, budget))
    for _ in range(diagram.free_loops):
        tables.append({(0, 1): 1, (0, -1): 1})

    if not tables:
        raise EmptyTable("empty link has no Khovanov homology")
    total = tables[0]
    for other in tables[1:]:
        total = _convolve(total, other)
    return KhTable(total, coefficients, diagram.crossing_count(),
                   diagram.positive_count(), diagram.negative_count())


def _convolve(t1, t2):
    out: Dict[Tuple[int, int], int] = {}
    for (i1, j1), r1 in t1.items():
        for (i2, j2), r2 in t2.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + r1 * r2
    return out


def _connected_pieces(diagram: LinkDiagram):
    """(arcs, sign) lists of the crossing-connected components."""
    crossings = [c.arcs for c in diagram.crossings]
    signs = [c.sign for c in diagram.crossings]
    if not crossings:
        return []
    arc_to_crossings: Dict[int, List[int]] = {}
    for ci, arcs in enumerate(crossings):
        for a in arcs:
            arc_to_crossings.setdefault(a, []).append(ci)
    seen = set()
    pieces = []
    for start in range(len(crossings)):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        members = []
        while stack:
            ci = stack.pop()
            members.append(ci)
            for a in crossings[ci]:
                for cj in arc_to_crossings[a]:
                    if cj not in seen:
                        seen.add(cj)
                        stack.append(cj)
        pieces.append([(crossings[ci], signs[ci]) for ci in sorted(members)])
    return pieces


# ---------------------------------------------------------------------------
# naive engine: the full cube of resolutions
# ---------------------------------------------------------------------------

def _resolution_joins(crossings, v: int, arc_index) -> List[int]:
    joins: List[int] = []
    for ci, (a, b, c, d) in enumerate(crossings):
        if (v >> ci) & 1:
            joins += [arc_index[a], arc_index[d], arc_index[b], arc_index[c]]
        else:
            joins += [arc_index[a], arc_index[b], arc_index[c], arc_index[d]]
    return joins


def _naive_connected(piece, coefficients: str, budget: int):
    crossings = [arcs for arcs, _sign in piece]
    signs = [sign for _arcs, sign in piece]
    nc = len(crossings)
    arcs = sorted({a for cr in crossings for a in cr})
    arc_index = {a: i for i, a in enumerate(arcs)}
    n_arcs = len(arcs)

    n_plus = sum(1 for s in signs if s > 0)
    n_minus = nc - n_plus

    circles: List[Tuple[int, List[int]]] = []
    total_gens = 0
    for v in range(1 << nc):
        k, labels = kernel.union_circles(
            n_arcs, _resolution_joins(crossings, v, arc_index))
        circles.append((k, labels))
        total_gens += 1 << k
        if total_gens > budget:
            raise MemoryBudgetExceeded(
                f"cube needs more than {budget} generators")

    # generator index per (i, j) block
    index: Dict[Tuple[int, int], Dict[Tuple[int, int], int]] = {}
    dims: Dict[Tuple[int, int], int] = {}
    for v in range(1 << nc):
        k = circles[v][0]
        i = bin(v).count("1") - n_minus
        base_j = k + bin(v).count("1") + n_plus - 2 * n_minus
        for mask in range(1 << k):
            j = base_j - 2 * bin(mask).count("1")
            block = index.setdefault((i, j), {})
            block[(v, mask)] = len(block)
            dims[(i, j)] = len(block)

    # matrices d_(i,j): rows = target generators, cols = source
    mats: Dict[Tuple[int, int], List[Dict[int, int]]] = {}

    def add_entry(i, j, src, dst, coeff):
        rows = mats.setdefault((i, j), [])
        src_i = index[(i, j)][src]
        dst_i = index[(i + 1, j)][dst]
        while len(rows) <= dst_i:
            rows.append({})
        rows[dst_i][src_i] = rows[dst_i].get(src_i, 0) + coeff

    for v in range(1 << nc):
        kv, labv = circles[v]
        i = bin(v).count("1") - n_minus
        base_j = kv + bin(v).count("1") + n_plus - 2 * n_minus
        for ci in range(nc):
            if (v >> ci) & 1:
                continue
            v2 = v | (1 << ci)
            sign = -1 if bin(v & ((1 << ci) - 1)).count("1") % 2 else 1
            kv2, labv2 = circles[v2]
            # circle correspondence via arcs
            fwd = [set() for _ in range(kv)]
            for arc in range(n_arcs):
                fwd[labv[arc]].add(labv2[arc])
            if kv2 == kv - 1:
                # the two circles mapping to one common target merge
                targets: Dict[int, List[int]] = {}
                for c in range(kv):
                    (t,) = fwd[c]
                    targets.setdefault(t, []).append(c)
                (tgt, ab) = next((t, cs) for t, cs in targets.items()
                                 if len(cs) == 2)
                ca, cb = ab
                for mask in range(1 << kv):
                    j = base_j - 2 * bin(mask).count("1")
                    bits_a = (mask >> ca) & 1
                    bits_b = (mask >> cb) & 1
                    if bits_a and bits_b:
                        continue  # x.x -> 0
                    out_mask = 0
                    for c in range(kv):
                        if c in (ca, cb):
                            continue
                        (t,) = fwd[c]
                        if (mask >> c) & 1:
                            out_mask |= 1 << t
                    if bits_a or bits_b:
                        out_mask |= 1 << tgt
                    add_entry(i, j, (v, mask), (v2, out_mask), sign)
            elif kv2 == kv + 1:
                split = next(c for c in range(kv) if len(fwd[c]) == 2)
                cc, cd = sorted(fwd[split])
                for mask in range(1 << kv):
                    j = base_j - 2 * bin(mask).count("1")
                    out_base = 0
                    for c in range(kv):
                        if c == split:
                            continue
                        (t,) = fwd[c]
                        if (mask >> c) & 1:
                            out_base |= 1 << t
                    if (mask >> split) & 1:
                        add_entry(i, j, (v, mask),
                                  (v2, out_base | (1 << cc) | (1 << cd)), sign)
                    else:
                        add_entry(i, j, (v, mask), (v2, out_base | (1 << cc)), sign)
                        add_entry(i, j, (v, mask), (v2, out_base | (1 << cd)), sign)
            else:
                raise AssertionError("smoothing change must shift circles by 1")

    ranks: Dict[Tuple[int, int], int] = {}
    for (i, j), rows in mats.items():
        ranks[(i, j)] = _matrix_rank(rows, dims[(i, j)], coefficients)

    table: Dict[Tuple[int, int], int] = {}
    for (i, j), dim in dims.items():
        betti = dim - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if betti:
            table[(i, j)] = betti
    return table


def _matrix_rank(rows: List[Dict[int, int]], ncols: int, coefficients: str) -> int:
    if coefficients == "f2":
        bitrows = []
        for row in rows:
            bits = 0
            for col, val in row.items():
                if val % 2:
                    bits |= 1 << col
            if bits:
                bitrows.append(bits)
        return kernel.rank_mod2(bitrows)
    return kernel.rank_exact(rows, ncols)


def jones_via_homfly(diagram: LinkDiagram) -> LaurentPoly2:
    """Unnormalized Jones polynomial in q from the HOMFLY-PT polynomial.

    Equals the graded Euler characteristic of the Khovanov table: the
    substitution is a -> q^-2, z -> q - q^-1, times (q + q^-1).
    """
    from .skein import homfly
    p = homfly(diagram)
    q2inv = LaurentPoly2({(-2, 0): 1}, ("q", "t"))
    q2 = LaurentPoly2({(2, 0): 1}, ("q", "t"))
    zsub = LaurentPoly2({(1, 0): 1, (-1, 0): -1}, ("q", "t"))
    total = LaurentPoly2.zero(("q", "t"))
    for (pa, pz), coeff in p.terms.items():
        term = LaurentPoly2({(0, 0): coeff}, ("q", "t"))
        apow = q2inv if pa >= 0 else q2
        for _ in range(abs(pa)):
            term = term * apow
        for _ in range(pz):
            term = term * zsub
        total = total + term
    unknot = LaurentPoly2({(1, 0): 1, (-1, 0): 1}, ("q", "t"))
    return total * unknot
