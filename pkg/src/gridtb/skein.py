"""Skein-recursion engines for the Kauffman and HOMFLY-PT polynomials.

Conventions (pinned by the trefoil and unknot fixtures, matching the
Knot Atlas tables):

  Kauffman   F(D) = a^{-w(D)} * L(D) with L(unknot) = 1,
             L(X+) + L(X-) = z * (L(X0) + L(Xoo)),
             a kink of sign s contributes a factor a^s to L, so any
             unknot diagram has L = a^{writhe} and F = 1.  Under the
             bracket specialization a = -A^3, z = A + A^{-1}, L is the
             Kauffman bracket, which pins the convention.
  HOMFLY-PT  a*P(L+) - a^{-1}*P(L-) = z*P(L0), P(unknot) = 1,
             P(split union with unknot) = (a - a^{-1}) z^{-1} * P.

Both production engines recurse on simplified states (kink and bigon
reduction, split-circle removal) with memoization on a canonical
relabeling of the state; the branch crossing is picked on a maximal
over-strand run so switches unknot early.  The naive engines expand the
same skein relations with no simplification, memoization or heuristics
and serve as independent oracles.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .diagram import LinkDiagram
from .errors import CrossingLimitExceeded, DegreeOfZero, NonRealResult
from .laurent import LaurentPoly2

DEFAULT_CROSSING_LIMIT = 20

_DELTA_KAUFFMAN = LaurentPoly2({(1, -1): 1, (-1, -1): 1, (0, 0): -1})
_DELTA_HOMFLY = LaurentPoly2({(1, -1): 1, (-1, -1): -1})
_Z = LaurentPoly2({(0, 1): 1})


def _a_power(k: int) -> LaurentPoly2:
    return LaurentPoly2({(k, 0): 1})


# ---------------------------------------------------------------------------
# Mutable skein state: crossings as PD tuples (slot 0 = under-in), plus
# signs when oriented.  Arc splicing relabels; closed circles are counted
# and removed by the caller.
# ---------------------------------------------------------------------------

class _State:
    __slots__ = ("crossings", "signs")

    def __init__(self, crossings: List[Tuple[int, int, int, int]],
                 signs: Optional[List[int]] = None):
        self.crossings = crossings
        self.signs = signs  # None for unoriented (Kauffman) states

    def copy(self) -> "_State":
        return _State(list(self.crossings),
                      None if self.signs is None else list(self.signs))

    def occurrences(self) -> Dict[int, List[Tuple[int, int]]]:
        occ: Dict[int, List[Tuple[int, int]]] = {}
        for ci, c in enumerate(self.crossings):
            for s, arc in enumerate(c):
                occ.setdefault(arc, []).append((ci, s))
        return occ

    def drop(self, indices) -> None:
        keep = [i for i in range(len(self.crossings)) if i not in indices]
        self.crossings = [self.crossings[i] for i in keep]
        if self.signs is not None:
            self.signs = [self.signs[i] for i in keep]

    def relabel_arc(self, old: int, new: int) -> None:
        if old == new:
            return
        self.crossings = [tuple(new if a == old else a for a in c)
                          for c in self.crossings]


def _splice(state: _State, u: int, v: int) -> int:
    """Join an end of arc u to an end of arc v; returns circles closed (0/1)."""
    if u == v:
        return 1
    state.relabel_arc(v, u)
    return 0


def _smooth(state: _State, ci: int, pairing: str) -> int:
    """Remove crossing ci, joining '01,23' or '03,12' slot pairs.

    Returns the number of closed circles created.
    """
    a, b, c, d = state.crossings[ci]
    state.drop({ci})
    circles = 0
    if pairing == "01,23":
        circles += _splice(state, a, b)
        cc = a if c == b else c
        dd = a if d == b else d
        circles += _splice(state, cc, dd)
    else:
        circles += _splice(state, a, d)
        bb = a if b == d else b
        cc = a if c == d else c
        circles += _splice(state, bb, cc)
    return circles


def _switch(state: _State, ci: int) -> None:
    """Swap over/under at crossing ci, preserving the cyclic slot order."""
    a, b, c, d = state.crossings[ci]
    if state.signs is None:
        state.crossings[ci] = (b, c, d, a)
    else:
        if state.signs[ci] > 0:
            state.crossings[ci] = (d, a, b, c)
        else:
            state.crossings[ci] = (b, c, d, a)
        state.signs[ci] = -state.signs[ci]


# --- traversal --------------------------------------------------------------

def _head_end(state: _State, occ, arc) -> Tuple[int, int]:
    """The end where the arc points into its crossing (oriented states)."""
    for ci, s in occ[arc]:
        if s == 0:
            return ci, s
        if s == 3 and state.signs[ci] > 0:
            return ci, s
        if s == 1 and state.signs[ci] < 0:
            return ci, s
    raise AssertionError(f"arc {arc} has no head end")


def _start_end(state: _State, occ, arc) -> Tuple[int, int]:
    """Switch-stable entry end for unoriented walks.

    The choice must not depend on slot numbers except for loop arcs,
    where an over-slot is preferred; switching a crossing rotates its
    slots, and these rules keep the skein recursion's first-bad-crossing
    measure monotone.
    """
    (c1, s1), (c2, s2) = occ[arc]
    if c1 != c2:
        return (c1, s1) if c1 < c2 else (c2, s2)
    odd = [(c, s) for c, s in occ[arc] if s % 2 == 1]
    if odd:
        return min(odd)
    return min(occ[arc])


def _traversal(state: _State):
    """Deterministic walk over all strands.

    Returns per-component lists of (crossing, entry_slot).  Components
    are taken up by smallest arc label.  Oriented states are walked
    along their orientation; unoriented ones by the stable entry rule.
    """
    occ = state.occurrences()
    oriented = state.signs is not None
    visited = set()
    components = []
    for arc in sorted(occ):
        first = _head_end(state, occ, arc) if oriented else _start_end(state, occ, arc)
        if first in visited:
            continue
        passes = []
        ci, s = first
        while (ci, s) not in visited:
            visited.add((ci, s))
            out = (s + 2) % 4
            visited.add((ci, out))
            out_arc = state.crossings[ci][out]
            ends = [e for e in occ[out_arc] if e != (ci, out)]
            passes.append((ci, s))
            if not ends:
                break
            ci, s = ends[0]
        components.append(passes)
    return components


def _component_writhe(state: _State) -> int:
    """Sum of crossing signs over same-component self-crossings, with the
    orientation induced by the traversal.  Well defined for descending
    states, where split components contribute zero."""
    comps = _traversal(state)
    entry: Dict[int, List[Tuple[int, int, int]]] = {}
    for comp_id, passes in enumerate(comps):
        for ci, s in passes:
            entry.setdefault(ci, []).append((comp_id, s))
    w = 0
    for ci, ent in entry.items():
        if len(ent) != 2:
            continue
        (k1, s1), (k2, s2) = ent
        if k1 != k2:
            continue
        under = s1 if s1 % 2 == 0 else s2
        over = s2 if s1 % 2 == 0 else s1
        w += 1 if (over - under) % 4 == 3 else -1
    return w


def _descending_data(state: _State):
    """(bad_crossing_or_None, n_components).

    The bad crossing is the first one met on an under-slot at its first
    visit, walking components in canonical order.  It terminates the
    maximal descending over-run from the canonical start, so switching
    it extends that run; smoothing it removes a crossing.
    """
    comps = _traversal(state)
    seen = set()
    for passes in comps:
        for ci, s in passes:
            if ci not in seen:
                seen.add(ci)
                if s % 2 == 0:
                    return ci, len(comps)
    return None, len(comps)


# --- simplification ---------------------------------------------------------

def _find_kink(state: _State) -> Optional[Tuple[int, int]]:
    """A crossing with a loop arc in adjacent slots; returns (ci, sign)."""
    for ci, c in enumerate(state.crossings):
        for s in range(4):
            if c[s] == c[(s + 1) % 4]:
                sign = 1 if s in (0, 2) else -1
                return ci, sign
    return None


def _remove_kink(state: _State, ci: int) -> int:
    """Remove a kink crossing; returns circles closed (the loop itself
    counts only when the whole component was the single kink)."""
    c = state.crossings[ci]
    for s in range(4):
        if c[s] == c[(s + 1) % 4]:
            u, v = c[(s + 2) % 4], c[(s + 3) % 4]
            state.drop({ci})
            return _splice(state, u, v)
    raise AssertionError("no kink at crossing")


def _find_bigon(state: _State) -> Optional[Tuple[int, int, int, int]]:
    """A reducible R2 bigon; returns (c1, s1, c2, s2) face darts."""
    other: Dict[Tuple[int, int], Tuple[int, int]] = {}
    occ = state.occurrences()
    for ends in occ.values():
        if len(ends) == 2:
            other[ends[0]] = ends[1]
            other[ends[1]] = ends[0]
    for ci, c in enumerate(state.crossings):
        for s in range(4):
            d1 = (ci, s)
            prev = (ci, (s - 1) % 4)
            if prev not in other:
                continue
            d2 = other[prev]
            c2, s2 = d2
            if c2 == ci:
                continue
            back = (c2, (s2 - 1) % 4)
            if back not in other or other[back] != d1:
                continue
            # arcs: A at (ci, s-1)==(c2, s2); B at (ci, s)==(c2, s2-1)
            arc_a = state.crossings[ci][(s - 1) % 4]
            arc_b = state.crossings[ci][s]
            if arc_a == arc_b:
                continue
            a_over_1 = ((s - 1) % 4) % 2 == 1
            a_over_2 = s2 % 2 == 1
            b_over_1 = s % 2 == 1
            b_over_2 = ((s2 - 1) % 4) % 2 == 1
            if not (a_over_1 == a_over_2 and b_over_1 == b_over_2
                    and a_over_1 != b_over_1):
                continue
            # outer arcs must differ from the bigon arcs (else a kink)
            a1 = state.crossings[ci][(s + 1) % 4]
            a2 = state.crossings[c2][(s2 + 2) % 4]
            b1 = state.crossings[ci][(s + 2) % 4]
            b2 = state.crossings[c2][(s2 + 1) % 4]
            if arc_a in (a1, a2) or arc_b in (b1, b2):
                continue
            return ci, s, c2, s2
    return None


def _reduce_bigon(state: _State, ci, s, c2, s2) -> int:
    """Apply the R2 move at a reducible bigon; returns circles closed."""
    a1 = state.crossings[ci][(s + 1) % 4]
    a2 = state.crossings[c2][(s2 + 2) % 4]
    b1 = state.crossings[ci][(s + 2) % 4]
    b2 = state.crossings[c2][(s2 + 1) % 4]
    state.drop({ci, c2})
    circles = _splice(state, a1, a2)
    b1n = a1 if b1 == a2 else b1
    b2n = a1 if b2 == a2 else b2
    circles += _splice(state, b1n, b2n)
    return circles


# --- canonical memo keys ------------------------------------------------------

def _canonical_key(state: _State):
    """Relabeling-invariant key: per crossing-connected component, the
    minimum over start darts of the walk-relabeled crossing tuples."""
    occ = state.occurrences()
    other: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for ends in occ.values():
        if len(ends) == 2:
            other[ends[0]] = ends[1]
            other[ends[1]] = ends[0]

    n = len(state.crossings)
    # connected components of the crossing graph
    comp_of = [-1] * n
    comps: List[List[int]] = []
    for ci in range(n):
        if comp_of[ci] >= 0:
            continue
        comp_id = len(comps)
        stack = [ci]
        comp_of[ci] = comp_id
        members = []
        while stack:
            cj = stack.pop()
            members.append(cj)
            for s in range(4):
                end = other.get((cj, s))
                if end is not None and comp_of[end[0]] < 0:
                    comp_of[end[0]] = comp_id
                    stack.append(end[0])
        comps.append(members)

    comp_keys = []
    for members in comps:
        best = None
        for start_ci in members:
            for start_s in range(4):
                key = _walk_key(state, other, members, start_ci, start_s)
                if best is None or key < best:
                    best = key
        comp_keys.append(best)
    return tuple(sorted(comp_keys))


def _walk_key(state: _State, other, members, start_ci, start_s):
    arc_label: Dict[tuple, int] = {}

    def label(ci, s):
        # an arc is identified by its (unordered) end-dart pair
        end = other.get((ci, s))
        key_ends = ((ci, s),) if end is None else tuple(sorted([(ci, s), end]))
        if key_ends not in arc_label:
            arc_label[key_ends] = len(arc_label)
        return arc_label[key_ends]

    order: List[int] = []
    discovered = set()
    visited = set()
    ci, s = start_ci, start_s
    while True:
        # walk one strand from (ci, s)
        while (ci, s) not in visited:
            visited.add((ci, s))
            if ci not in discovered:
                discovered.add(ci)
                order.append(ci)
            out = (s + 2) % 4
            visited.add((ci, out))
            end = other.get((ci, out))
            if end is None:
                break
            ci, s = end
        # next start: first unvisited dart of the earliest-discovered crossing
        nxt = None
        for cj in order:
            for s2 in range(4):
                if (cj, s2) not in visited:
                    nxt = (cj, s2)
                    break
            if nxt:
                break
        if nxt is None:
            break
        ci, s = nxt

    rows = []
    for ci in order:
        labels = tuple(label(ci, s) for s in range(4))
        if state.signs is not None:
            # oriented tuples are rigid: slot 0 is the under-in arc
            rows.append((labels, state.signs[ci]))
        else:
            # unoriented crossings are defined up to rotation by two slots
            rows.append(min(labels, labels[2:] + labels[:2]))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Kauffman polynomial
# ---------------------------------------------------------------------------

def _state_from_diagram(diagram: LinkDiagram, oriented: bool) -> _State:
    crossings = [c.arcs for c in diagram.crossings]
    signs = [c.sign for c in diagram.crossings] if oriented else None
    return _State(list(crossings), signs)


def _check_limit(diagram: LinkDiagram, limit: int) -> None:
    if diagram.crossing_count() > limit:
        raise CrossingLimitExceeded(
            f"{diagram.crossing_count()} crossings exceeds the limit {limit}")


def kauffman_F(diagram: LinkDiagram, limit: int = DEFAULT_CROSSING_LIMIT
               ) -> LaurentPoly2:
    """The two-variable Kauffman polynomial F(a, z) of the diagram."""
    _check_limit(diagram, limit)
    if diagram.component_count() == 0:
        raise DegreeOfZero("empty link has no Kauffman polynomial")
    state = _state_from_diagram(diagram, oriented=False)
    memo: Dict[object, LaurentPoly2] = {}
    lam = _kauffman_lambda(state, diagram.free_loops, memo)
    return _a_power(-diagram.writhe()) * lam


def _kauffman_lambda(state: _State, circles: int,
                     memo: Dict[object, LaurentPoly2]) -> LaurentPoly2:
    """L(state) * delta^circles, recursively."""
    factor = LaurentPoly2.one()
    while True:
        kink = _find_kink(state)
        if kink is not None:
            ci, sign = kink
            factor = factor * _a_power(sign)
            circles += _remove_kink(state, ci)
            continue
        bigon = _find_bigon(state)
        if bigon is not None:
            circles += _reduce_bigon(state, *bigon)
            continue
        break

    if not state.crossings:
        # circles >= 1 here: the state came from a nonempty diagram
        return factor * _DELTA_KAUFFMAN ** (circles - 1)

    base = factor * _DELTA_KAUFFMAN ** circles

    key = _canonical_key(state)
    cached = memo.get(key)
    if cached is not None:
        return base * cached

    bad, ncomps = _descending_data(state)
    if bad is None:
        w = _component_writhe(state)
        value = _a_power(w) * _DELTA_KAUFFMAN ** (ncomps - 1)
    else:
        s_switch = state.copy()
        _switch(s_switch, bad)
        s_zero = state.copy()
        c_zero = _smooth(s_zero, bad, "01,23")
        s_inf = state.copy()
        c_inf = _smooth(s_inf, bad, "03,12")
        value = (_Z * (_kauffman_lambda(s_zero, c_zero, memo)
                       + _kauffman_lambda(s_inf, c_inf, memo))
                 - _kauffman_lambda(s_switch, 0, memo))
    memo[key] = value
    return base * value


def naive_kauffman_F(diagram: LinkDiagram, limit: int = 10) -> LaurentPoly2:
    """Oracle: full skein expansion, no simplification or memoization."""
    _check_limit(diagram, limit)
    if diagram.component_count() == 0:
        raise DegreeOfZero("empty link has no Kauffman polynomial")
    state = _state_from_diagram(diagram, oriented=False)
    lam = _naive_lambda(state, diagram.free_loops)
    return _a_power(-diagram.writhe()) * lam


def _naive_lambda(state: _State, circles: int) -> LaurentPoly2:
    if not state.crossings:
        return _DELTA_KAUFFMAN ** (circles - 1)
    bad, ncomps = _descending_data(state)
    if bad is None:
        w = _component_writhe(state)
        return (_a_power(w) * _DELTA_KAUFFMAN ** (ncomps - 1)
                * _DELTA_KAUFFMAN ** circles)
    s_switch = state.copy()
    _switch(s_switch, bad)
    s_zero = state.copy()
    c_zero = _smooth(s_zero, bad, "01,23")
    s_inf = state.copy()
    c_inf = _smooth(s_inf, bad, "03,12")
    return (_Z * (_naive_lambda(s_zero, circles + c_zero)
                  + _naive_lambda(s_inf, circles + c_inf))
            - _naive_lambda(s_switch, circles))


# ---------------------------------------------------------------------------
# HOMFLY-PT polynomial
# ---------------------------------------------------------------------------

def homfly(diagram: LinkDiagram, limit: int = DEFAULT_CROSSING_LIMIT
           ) -> LaurentPoly2:
    """The HOMFLY-PT polynomial P(a, z) of the oriented diagram."""
    _check_limit(diagram, limit)
    if diagram.component_count() == 0:
        raise DegreeOfZero("empty link has no HOMFLY-PT polynomial")
    state = _state_from_diagram(diagram, oriented=True)
    memo: Dict[object, LaurentPoly2] = {}
    return _homfly_value(state, diagram.free_loops, memo)


def _oriented_smooth(state: _State, ci: int) -> int:
    pairing = "01,23" if state.signs[ci] > 0 else "03,12"
    return _smooth(state, ci, pairing)


def _homfly_value(state: _State, circles: int,
                  memo: Dict[object, LaurentPoly2]) -> LaurentPoly2:
    while True:
        kink = _find_kink(state)
        if kink is not None:
            circles += _remove_kink(state, kink[0])
            continue
        bigon = _find_bigon(state)
        if bigon is not None:
            circles += _reduce_bigon(state, *bigon)
            continue
        break

    if not state.crossings:
        return _DELTA_HOMFLY ** (circles - 1)

    base = _DELTA_HOMFLY ** circles
    key = _canonical_key(state)
    cached = memo.get(key)
    if cached is not None:
        return base * cached

    bad, ncomps = _descending_data(state)
    if bad is None:
        value = _DELTA_HOMFLY ** (ncomps - 1)
    else:
        sign = state.signs[bad]
        s_switch = state.copy()
        _switch(s_switch, bad)
        s_zero = state.copy()
        c_zero = _oriented_smooth(s_zero, bad)
        if sign > 0:
            value = (_a_power(-2) * _homfly_value(s_switch, 0, memo)
                     + _a_power(-1) * _Z * _homfly_value(s_zero, c_zero, memo))
        else:
            value = (_a_power(2) * _homfly_value(s_switch, 0, memo)
                     - _a_power(1) * _Z * _homfly_value(s_zero, c_zero, memo))
    memo[key] = value
    return base * value


def naive_homfly(diagram: LinkDiagram, limit: int = 10) -> LaurentPoly2:
    """Oracle: full oriented skein expansion, no shortcuts."""
    _check_limit(diagram, limit)
    if diagram.component_count() == 0:
        raise DegreeOfZero("empty link has no HOMFLY-PT polynomial")
    state = _state_from_diagram(diagram, oriented=True)
    return _naive_homfly(state, diagram.free_loops)


def _naive_homfly(state: _State, circles: int) -> LaurentPoly2:
    if not state.crossings:
        return _DELTA_HOMFLY ** (circles - 1)
    bad, ncomps = _descending_data(state)
    if bad is None:
        return _DELTA_HOMFLY ** (ncomps - 1 + circles)
    sign = state.signs[bad]
    s_switch = state.copy()
    _switch(s_switch, bad)
    s_zero = state.copy()
    c_zero = _oriented_smooth(s_zero, bad)
    if sign > 0:
        return (_a_power(-2) * _naive_homfly(s_switch, circles)
                + _a_power(-1) * _Z * _naive_homfly(s_zero, circles + c_zero))
    return (_a_power(2) * _naive_homfly(s_switch, circles)
            - _a_power(1) * _Z * _naive_homfly(s_zero, circles + c_zero))


# ---------------------------------------------------------------------------
# Dubrovnik transform and its leading coefficient
# ---------------------------------------------------------------------------

def dubrovnik_transform(f: LaurentPoly2) -> LaurentPoly2:
    """D(a,z) = F(ia, -iz): each monomial picks up i^(p-q).

    For Kauffman polynomials of knots p-q is even, so the result is an
    integer polynomial; an odd p-q signals invalid input.
    """
    terms = {}
    for (p, q), coeff in f.terms.items():
        k = (p - q) % 4
        if k % 2:
            raise NonRealResult(f"term a^{p} z^{q} maps to an imaginary monomial")
        terms[(p, q)] = coeff if k == 0 else -coeff
    return LaurentPoly2(terms, f.variables)


def leading_a_part(p: LaurentPoly2) -> LaurentPoly2:
    """Coefficient of the top a-power, as a polynomial in z."""
    top = p.max_deg(p.variables[0])
    return p.coefficient_of(p.variables[0], top)
