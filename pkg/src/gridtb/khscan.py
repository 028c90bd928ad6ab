"""Scan-mode Khovanov engine: iterative tensoring over planar matchings.

Crossings are absorbed one at a time.  The state is a chain complex
whose objects are crossingless matchings of the current boundary arcs
(plus a quantum shift); differential entries are integer combinations
of dotted cobordisms in canonical form: every component is a disk with
one boundary circle and at most one dot, so an entry is stored as
{frozenset(dotted glued-circle ids): coefficient} over the circles of
the glued source/target 1-manifold.

After each crossing, closed circles are delooped (a circle splits an
object into +1/-1 shifted copies) and every entry that is a unit times
an invertible endomorphism is cancelled by Gaussian elimination.  Unit
pivots keep the complex exact over the integers; field ranks are
extracted at the end by exact elimination.  The deloop-then-cancel
order is fixed, so runs are deterministic.

Closed components evaluate by the Frobenius algebra Z[x]/(x^2): genus 0
with one dot gives 1, genus 1 undotted gives 2, everything else 0; a
neck-cut distributes b-1+d dots over the b boundary circles of a
genus-0 component.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

from . import kernel
from .errors import MemoryBudgetExceeded

Entry = Dict[FrozenSet, int]
Matching = FrozenSet[FrozenSet]


# ---------------------------------------------------------------------------
# glued circles of two matchings over the same boundary
# ---------------------------------------------------------------------------

def _glue_circles(m1: Matching, m2: Matching):
    """Circles of the 1-manifold glued from two matchings.

    Returns (circles, pair_to_circle): circles maps each circle id (its
    minimal point) to the point set; pair_to_circle maps ("a"|"b", pair)
    to the containing circle id.
    """
    nxt: Dict[int, Dict[str, Tuple[int, FrozenSet]]] = {}
    for side, m in (("a", m1), ("b", m2)):
        for pair in m:
            p, q = sorted(pair)
            nxt.setdefault(p, {})[side] = (q, pair)
            nxt.setdefault(q, {})[side] = (p, pair)
    circles: Dict[int, set] = {}
    pair_to_circle: Dict[Tuple[str, FrozenSet], int] = {}
    seen: set = set()
    for start in sorted(nxt):
        if start in seen:
            continue
        points = set()
        pairs = []
        p, side = start, "a"
        while p not in points:
            points.add(p)
            q, pair = nxt[p][side]
            pairs.append((side, pair))
            p = q
            side = "b" if side == "a" else "a"
        cid = min(points)
        circles[cid] = points
        for sp in pairs:
            pair_to_circle[sp] = cid
        seen |= points
    return circles, pair_to_circle


# ---------------------------------------------------------------------------
# canonical reduction of a glued chi=1-piece surface
# ---------------------------------------------------------------------------

def _cid_key(cid):
    """Sort key over mixed circle ids: plain ints and ("s"|"t", int)."""
    return (0, cid, "") if isinstance(cid, int) else (1, cid[1], cid[0])


def _build_entry(nodes: Sequence, edges: Sequence[Tuple],
                 circle_nodes: Dict, terms: Sequence[Tuple[Dict, int]]) -> Entry:
    """Reduce a surface glued from chi=1 pieces to canonical form.

    nodes: piece ids (disks may carry dots; squares, strips and saddles
    never do); edges: (node, node) gluings along a segment, each
    lowering chi by one; circle_nodes: boundary circle id -> nonempty
    set of nodes it touches; terms: (node -> dots, coefficient).
    """
    index = {n: i for i, n in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for n1, n2 in edges:
        r1, r2 = find(index[n1]), find(index[n2])
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)

    comp_of = {n: find(index[n]) for n in nodes}
    comps: Dict[int, Dict] = {}
    for n in nodes:
        comps.setdefault(comp_of[n], {"V": 0, "E": 0, "circles": []})["V"] += 1
    for n1, n2 in edges:
        comps[comp_of[n1]]["E"] += 1
    for cid in sorted(circle_nodes, key=_cid_key):
        root = comp_of[next(iter(circle_nodes[cid]))]
        comps[root]["circles"].append(cid)

    result: Entry = {}
    for node_dots, coeff in terms:
        if not coeff:
            continue
        partial: List[Tuple[FrozenSet, int]] = [(frozenset(), coeff)]
        dead = False
        for root in sorted(comps):
            comp = comps[root]
            chi = comp["V"] - comp["E"]
            dots = sum(d for n, d in node_dots.items() if comp_of[n] == root)
            bcircles = comp["circles"]
            b = len(bcircles)
            if b == 0:
                genus2 = 2 - chi
                if genus2 == 0 and dots == 1:
                    factor = 1
                elif genus2 == 2 and dots == 0:
                    factor = 2
                else:
                    dead = True
                    break
                partial = [(s, c * factor) for s, c in partial]
                continue
            if dots > 1:
                dead = True
                break
            genus2 = 2 - b - chi
            if genus2 >= 4:
                dead = True
                break
            if genus2 == 2:
                if dots:
                    dead = True
                    break
                dots = 1
                partial = [(s, 2 * c) for s, c in partial]
            need = b - 1 + dots
            new_partial = []
            for chosen in combinations(sorted(bcircles, key=_cid_key), need):
                add = frozenset(chosen)
                for s, c in partial:
                    new_partial.append((s | add, c))
            partial = new_partial
            if not partial:
                dead = True
                break
        if dead:
            continue
        for s, c in partial:
            new = result.get(s, 0) + c
            if new:
                result[s] = new
            else:
                del result[s]
    return result


# ---------------------------------------------------------------------------
# composition and inversion (circle-free objects)
# ---------------------------------------------------------------------------

def _compose(m_src: Matching, m_mid: Matching, m_dst: Matching,
             e1: Entry, e2: Entry) -> Entry:
    """Canonical form of e2 after e1."""
    if not e1 or not e2:
        return {}
    g1_circles, g1_pairs = _glue_circles(m_src, m_mid)
    g2_circles, g2_pairs = _glue_circles(m_mid, m_dst)
    g3_circles, g3_pairs = _glue_circles(m_src, m_dst)

    nodes = [("f", c) for c in g1_circles] + [("g", c) for c in g2_circles]
    edges = [((("f", g1_pairs[("b", pair)])), ("g", g2_pairs[("a", pair)]))
             for pair in m_mid]
    circle_nodes: Dict[int, set] = {c: set() for c in g3_circles}
    for pair in m_src:
        circle_nodes[g3_pairs[("a", pair)]].add(("f", g1_pairs[("a", pair)]))
    for pair in m_dst:
        circle_nodes[g3_pairs[("b", pair)]].add(("g", g2_pairs[("b", pair)]))

    terms = []
    for s1, c1 in e1.items():
        for s2, c2 in e2.items():
            node_dots: Dict = {}
            for c in s1:
                node_dots[("f", c)] = 1
            for c in s2:
                node_dots[("g", c)] = node_dots.get(("g", c), 0) + 1
            terms.append((node_dots, c1 * c2))
    return _build_entry(nodes, edges, circle_nodes, terms)


def _invert(matching: Matching, entry: Entry) -> Entry:
    """Inverse of eps*id + nilpotent, eps = +-1; exact over Z."""
    eps = entry[frozenset()]
    nil = {k: v for k, v in entry.items() if k}
    result: Entry = {frozenset(): eps}
    power: Entry = dict(nil)
    sign = -1
    while power:
        for k, v in power.items():
            new = result.get(k, 0) + eps * sign * v
            if new:
                result[k] = new
            else:
                result.pop(k, None)
        power = _compose(matching, matching, matching, power, nil)
        sign = -sign
    return result


# ---------------------------------------------------------------------------
# tensoring one crossing onto an object
# ---------------------------------------------------------------------------

class _Tensored:
    """Result of gluing a crossing resolution onto a matching."""
    __slots__ = ("matching", "circles", "pair_pieces", "circle_pieces",
                 "pair_points", "circle_points")

    def __init__(self, matching, circles, pair_pieces, circle_pieces,
                 pair_points, circle_points):
        self.matching = matching
        self.circles = circles
        self.pair_pieces = pair_pieces
        self.circle_pieces = circle_pieces
        self.pair_points = pair_points
        self.circle_points = circle_points


def _tensor_manifold(matching: Matching, res_pairs: List[Tuple[int, int]]
                     ) -> _Tensored:
    """Combine matching pairs with resolution arcs into a new manifold.

    Boundary points (degree one) pair off through chains; cycles close
    into circles.  The pieces of each chain/circle are recorded as
    ("m", old_pair) and ("r", k) tags, plus the interior points passed.
    """
    edges: List[Tuple[int, int, Tuple]] = []
    for pair in matching:
        p, q = sorted(pair)
        edges.append((p, q, ("m", pair)))
    for k, (p, q) in enumerate(res_pairs):
        edges.append((p, q, ("r", k)))

    incidence: Dict[int, List[int]] = {}
    for idx, (p, q, _tag) in enumerate(edges):
        incidence.setdefault(p, []).append(idx)
        incidence.setdefault(q, []).append(idx)
        if p == q:
            pass  # self-loop already contributes two end slots via one entry
    degree: Dict[int, int] = {}
    for idx, (p, q, _tag) in enumerate(edges):
        degree[p] = degree.get(p, 0) + 1
        degree[q] = degree.get(q, 0) + 1

    used = [False] * len(edges)

    def walk(start_point: int, first_edge: int):
        tags = []
        interior = []
        p, e = start_point, first_edge
        while True:
            used[e] = True
            a, b, tag = edges[e]
            tags.append(tag)
            p = b if p == a else a
            nxt = [i for i in incidence[p] if not used[i]]
            if not nxt:
                return p, tags, interior
            interior.append(p)
            e = nxt[0]

    new_pairs = []
    pair_pieces: Dict[FrozenSet, List] = {}
    pair_points: Dict[FrozenSet, List[int]] = {}
    for p in sorted(degree):
        if degree[p] != 1:
            continue
        pending = [i for i in incidence[p] if not used[i]]
        if not pending:
            continue
        end, tags, interior = walk(p, pending[0])
        pair = frozenset((p, end))
        new_pairs.append(pair)
        pair_pieces[pair] = tags
        pair_points[pair] = interior

    circles = []
    circle_pieces: Dict[int, List] = {}
    circle_points: Dict[int, List[int]] = {}
    for idx in range(len(edges)):
        if used[idx]:
            continue
        a = edges[idx][0]
        end, tags, interior = walk(a, idx)
        points = {a, end} | set(interior)
        cid = min(points)
        circles.append(cid)
        circle_pieces[cid] = tags
        circle_points[cid] = sorted(points)

    return _Tensored(frozenset(new_pairs), tuple(sorted(circles)),
                     pair_pieces, circle_pieces, pair_points, circle_points)


# ---------------------------------------------------------------------------
# the scan complex
# ---------------------------------------------------------------------------

class _Complex:
    def __init__(self, budget: int):
        self.budget = budget
        # oid -> (h, matching, circles, q)
        self.objects: Dict[int, Tuple[int, Matching, Tuple, int]] = {}
        self.entries: Dict[Tuple[int, int], Entry] = {}
        self.outs: Dict[int, set] = {}
        self.ins: Dict[int, set] = {}
        self._next = 0

    def add_object(self, h: int, matching: Matching, circles, q: int) -> int:
        oid = self._next
        self._next += 1
        self.objects[oid] = (h, matching, tuple(circles), q)
        self.outs[oid] = set()
        self.ins[oid] = set()
        if len(self.objects) > self.budget:
            raise MemoryBudgetExceeded(
                f"scan complex exceeded {self.budget} live objects")
        return oid

    def set_entry(self, src: int, dst: int, entry: Entry) -> None:
        entry = {k: v for k, v in entry.items() if v}
        if entry:
            self.entries[(src, dst)] = entry
            self.outs[src].add(dst)
            self.ins[dst].add(src)
        else:
            self.drop_entry(src, dst)

    def drop_entry(self, src: int, dst: int) -> None:
        self.entries.pop((src, dst), None)
        self.outs[src].discard(dst)
        self.ins[dst].discard(src)

    def remove_object(self, oid: int) -> None:
        for dst in list(self.outs[oid]):
            self.drop_entry(oid, dst)
        for src in list(self.ins[oid]):
            self.drop_entry(src, oid)
        del self.objects[oid]
        del self.outs[oid]
        del self.ins[oid]


class _CrossingLocal:
    """Slot-level data of one crossing against the current boundary."""

    def __init__(self, arcs: Tuple[int, int, int, int], boundary: frozenset):
        self.arcs = arcs
        counts: Dict[int, int] = {}
        for a in arcs:
            counts[a] = counts.get(a, 0) + 1
        self.internal = {a: tuple(s for s in range(4) if arcs[s] == a)
                         for a, k in counts.items() if k == 2}
        self.consumed = {s: arcs[s] for s in range(4)
                         if counts[arcs[s]] == 1 and arcs[s] in boundary}
        self.new_points = {arcs[s] for s in range(4)
                           if counts[arcs[s]] == 1 and arcs[s] not in boundary}
        # slot_pair[(r, slot)] = index of the resolution arc at that slot
        self.slot_pair = {}
        for r, pairs in ((0, ((0, 1), (2, 3))), (1, ((0, 3), (1, 2)))):
            for k, (s1, s2) in enumerate(pairs):
                self.slot_pair[(r, s1)] = k
                self.slot_pair[(r, s2)] = k

    def res_arc_pairs(self, r: int) -> List[Tuple[int, int]]:
        pairs = ((0, 1), (2, 3)) if r == 0 else ((0, 3), (1, 2))
        return [(self.arcs[s1], self.arcs[s2]) for s1, s2 in pairs]


def _map_pieces(tags, points, res_tag, old_side, old_pairmap, internal_arcs,
                disk_tag):
    """Nodes touched by a chain/circle of a tensored manifold."""
    nodes = set()
    for tag in tags:
        if tag[0] == "m":
            nodes.add((disk_tag, old_pairmap[(old_side, tag[1])]))
        else:
            nodes.add(res_tag(tag[1]))
    for p in points:
        if p in internal_arcs:
            nodes.add(("l", p))
    return nodes


def _glued_circle_nodes(t_src: _Tensored, t_dst: _Tensored, res_tag_src,
                        res_tag_dst, old_pairmap, internal_arcs, disk_tag):
    """(circle ids, circle -> touching nodes) for glue(t_src, t_dst)."""
    _, gpairs = _glue_circles(t_src.matching, t_dst.matching)
    circle_nodes: Dict = {}
    # matched circles keep the plain min-point ids used by _glue_circles,
    # so entries stay composable after the s/t circles are delooped away
    for pair in t_src.matching:
        cid = gpairs[("a", pair)]
        circle_nodes.setdefault(cid, set()).update(
            _map_pieces(t_src.pair_pieces[pair], t_src.pair_points[pair],
                        res_tag_src, "a", old_pairmap, internal_arcs, disk_tag))
    for pair in t_dst.matching:
        cid = gpairs[("b", pair)]
        circle_nodes.setdefault(cid, set()).update(
            _map_pieces(t_dst.pair_pieces[pair], t_dst.pair_points[pair],
                        res_tag_dst, "b", old_pairmap, internal_arcs, disk_tag))
    for c in t_src.circles:
        circle_nodes[("s", c)] = _map_pieces(
            t_src.circle_pieces[c], t_src.circle_points[c],
            res_tag_src, "a", old_pairmap, internal_arcs, disk_tag)
    for c in t_dst.circles:
        circle_nodes[("t", c)] = _map_pieces(
            t_dst.circle_pieces[c], t_dst.circle_points[c],
            res_tag_dst, "b", old_pairmap, internal_arcs, disk_tag)
    return circle_nodes


def _extend_entry(f: Entry, m1: Matching, m2: Matching, t1: _Tensored,
                  t2: _Tensored, local: _CrossingLocal, r: int) -> Entry:
    """f tensored with the identity of resolution r of the crossing."""
    g_old_circles, g_old_pairs = _glue_circles(m1, m2)
    point_circle = {}
    for cid, pts in g_old_circles.items():
        for p in pts:
            point_circle[p] = cid

    nodes = ([("c", cid) for cid in g_old_circles]
             + [("r", 0), ("r", 1)]
             + [("l", a) for a in local.internal])
    edges = []
    for s, p in local.consumed.items():
        edges.append((("c", point_circle[p]), ("r", local.slot_pair[(r, s)])))
    for a, (sa, sb) in local.internal.items():
        edges.append((("l", a), ("r", local.slot_pair[(r, sa)])))
        edges.append((("l", a), ("r", local.slot_pair[(r, sb)])))

    circle_nodes = _glued_circle_nodes(
        t1, t2, lambda k: ("r", k), lambda k: ("r", k),
        g_old_pairs, local.internal, "c")
    terms = [({("c", cid): 1 for cid in S}, coeff) for S, coeff in f.items()]
    return _build_entry(nodes, edges, circle_nodes, terms)


def _saddle_entry(m: Matching, t0: _Tensored, t1: _Tensored,
                  local: _CrossingLocal, coeff: int) -> Entry:
    """The saddle id_m x (res0 -> res1), with the Koszul coefficient."""
    id_circles, id_pairs = _glue_circles(m, m)
    point_circle = {}
    for cid, pts in id_circles.items():
        for p in pts:
            point_circle[p] = cid

    nodes = ([("i", cid) for cid in id_circles] + [("x", 0)]
             + [("l", a) for a in local.internal])
    edges = []
    for s, p in local.consumed.items():
        edges.append((("i", point_circle[p]), ("x", 0)))
    for a, (sa, sb) in local.internal.items():
        edges.append((("l", a), ("x", 0)))
        edges.append((("l", a), ("x", 0)))

    circle_nodes = _glued_circle_nodes(
        t0, t1, lambda k: ("x", 0), lambda k: ("x", 0),
        id_pairs, local.internal, "i")
    return _build_entry(nodes, edges, circle_nodes, [({}, coeff)])


# ---------------------------------------------------------------------------
# deloop and cancel
# ---------------------------------------------------------------------------

def _deloop(comp: _Complex) -> None:
    queue = sorted(oid for oid, data in comp.objects.items() if data[2])
    while queue:
        oid = queue.pop(0)
        if oid not in comp.objects:
            continue
        h, matching, circles, q = comp.objects[oid]
        if not circles:
            continue
        c = circles[0]
        rest = circles[1:]
        plus = comp.add_object(h, matching, rest, q + 1)
        minus = comp.add_object(h, matching, rest, q - 1)
        skey, tkey = ("s", c), ("t", c)
        for src in sorted(comp.ins[oid]):
            f = comp.entries[(src, oid)]
            comp.set_entry(src, plus,
                           {S - {tkey}: v for S, v in f.items() if tkey not in S})
            comp.set_entry(src, minus,
                           {S - {tkey}: v for S, v in f.items() if tkey in S})
        for dst in sorted(comp.outs[oid]):
            g = comp.entries[(oid, dst)]
            comp.set_entry(plus, dst,
                           {S - {skey}: v for S, v in g.items() if skey in S})
            comp.set_entry(minus, dst,
                           {S - {skey}: v for S, v in g.items() if skey not in S})
        comp.remove_object(oid)
        if rest:
            queue.extend([plus, minus])


def _cancel(comp: _Complex) -> None:
    while True:
        pivot = None
        for (src, dst) in sorted(comp.entries):
            h1, m1, c1, q1 = comp.objects[src]
            h2, m2, c2, q2 = comp.objects[dst]
            if m1 == m2 and q1 == q2 and \
                    comp.entries[(src, dst)].get(frozenset()) in (1, -1):
                pivot = (src, dst)
                break
        if pivot is None:
            return
        src, dst = pivot
        f = comp.entries[(src, dst)]
        m_src = comp.objects[src][1]
        finv = _invert(m_src, f)
        others_in = sorted(comp.ins[dst] - {src})
        others_out = sorted(comp.outs[src] - {dst})
        for c_src in others_in:
            phi = comp.entries[(c_src, dst)]
            m_c = comp.objects[c_src][1]
            half = _compose(m_c, m_src, m_src, phi, finv)
            for d_dst in others_out:
                psi = comp.entries[(src, d_dst)]
                m_d = comp.objects[d_dst][1]
                corr = _compose(m_c, m_src, m_d, half, psi)
                if not corr:
                    continue
                current = dict(comp.entries.get((c_src, d_dst), {}))
                for k, v in corr.items():
                    new = current.get(k, 0) - v
                    if new:
                        current[k] = new
                    else:
                        current.pop(k, None)
                comp.set_entry(c_src, d_dst, current)
        comp.remove_object(src)
        comp.remove_object(dst)


# ---------------------------------------------------------------------------
# main loop
# ---------------------------------------------------------------------------

def _scan_order(crossings: List[Tuple[int, ...]]) -> List[int]:
    remaining = set(range(len(crossings)))
    order = []
    boundary: set = set()
    while remaining:
        if not order:
            pick = min(remaining)
        else:
            pick = max(remaining,
                       key=lambda ci: (len(set(crossings[ci]) & boundary), -ci))
        order.append(pick)
        remaining.discard(pick)
        counts: Dict[int, int] = {}
        for a in crossings[pick]:
            counts[a] = counts.get(a, 0) + 1
        for a, k in counts.items():
            if k == 2:
                continue
            if a in boundary:
                boundary.discard(a)
            else:
                boundary.add(a)
    return order


def scan_connected(piece: List[Tuple[Tuple[int, int, int, int], int]],
                   coefficients: str, budget: int) -> Dict[Tuple[int, int], int]:
    """Khovanov table of one crossing-connected diagram piece."""
    crossings = [arcs for arcs, _sign in piece]
    signs = [sign for _arcs, sign in piece]
    order = _scan_order(crossings)

    comp = _Complex(budget)
    comp.add_object(0, frozenset(), (), 0)
    boundary: frozenset = frozenset()

    for ci in order:
        local = _CrossingLocal(crossings[ci], boundary)
        sign = signs[ci]
        dh = (0, 1) if sign > 0 else (-1, 0)
        dq = (1, 2) if sign > 0 else (-2, -1)

        old_objects = sorted(comp.objects)
        old_entries = dict(comp.entries)
        tensored: Dict[Tuple[int, int], Tuple[int, _Tensored]] = {}
        for oid in old_objects:
            h, matching, circles, q = comp.objects[oid]
            if circles:
                raise AssertionError("objects must be delooped before tensoring")
            for r in (0, 1):
                t = _tensor_manifold(matching, local.res_arc_pairs(r))
                nid = comp.add_object(h + dh[r], t.matching, t.circles, q + dq[r])
                tensored[(oid, r)] = (nid, t)

        for (src, dst), f in sorted(old_entries.items()):
            m1 = comp.objects[src][1]
            m2 = comp.objects[dst][1]
            for r in (0, 1):
                nid1, t1 = tensored[(src, r)]
                nid2, t2 = tensored[(dst, r)]
                comp.set_entry(nid1, nid2,
                               _extend_entry(f, m1, m2, t1, t2, local, r))
        for oid in old_objects:
            h, matching, _circles, _q = comp.objects[oid]
            nid0, t0 = tensored[(oid, 0)]
            nid1, t1 = tensored[(oid, 1)]
            koszul = -1 if h % 2 else 1
            comp.set_entry(nid0, nid1,
                           _saddle_entry(matching, t0, t1, local, koszul))

        for oid in old_objects:
            comp.remove_object(oid)

        boundary = (boundary - set(local.consumed.values())) | local.new_points
        _deloop(comp)
        _cancel(comp)

    return _extract(comp, coefficients)


def _extract(comp: _Complex, coefficients: str) -> Dict[Tuple[int, int], int]:
    groups: Dict[Tuple[int, int], List[int]] = {}
    for oid, (h, matching, circles, q) in sorted(comp.objects.items()):
        if matching or circles:
            raise AssertionError("scan finished with a nonempty boundary")
        groups.setdefault((h, q), []).append(oid)
    dims = {key: len(oids) for key, oids in groups.items()}
    position = {}
    for key, oids in groups.items():
        for k, oid in enumerate(oids):
            position[oid] = k

    mats: Dict[Tuple[int, int], List[Dict[int, int]]] = {}
    for (src, dst), entry in comp.entries.items():
        h1, _m1, _c1, q1 = comp.objects[src]
        h2, _m2, _c2, q2 = comp.objects[dst]
        if q1 != q2 or h2 != h1 + 1:
            raise AssertionError("differential does not preserve gradings")
        coeff = entry.get(frozenset(), 0)
        if not coeff:
            continue
        rows = mats.setdefault((h1, q1), [])
        while len(rows) <= position[dst]:
            rows.append({})
        rows[position[dst]][position[src]] = coeff

    ranks: Dict[Tuple[int, int], int] = {}
    for key, rows in mats.items():
        if coefficients == "f2":
            bitrows = []
            for row in rows:
                bits = 0
                for col, val in row.items():
                    if val % 2:
                        bits |= 1 << col
                if bits:
                    bitrows.append(bits)
            ranks[key] = kernel.rank_mod2(bitrows)
        else:
            ranks[key] = kernel.rank_exact(rows, dims[key])

    table: Dict[Tuple[int, int], int] = {}
    for (h, q), dim in dims.items():
        betti = dim - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
        if betti:
            table[(h, q)] = betti
    return table

