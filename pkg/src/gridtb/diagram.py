"""Planar diagrams (PD codes) and braid words.

PD convention: a crossing is X[a,b,c,d] with the four arc labels listed
counterclockwise starting from the incoming under-arc, as in the Knot
Atlas tabulations.  The under-strand runs a -> c; the over-strand runs
d -> b at a positive crossing and b -> d at a negative one.  Crossing
signs are always recomputed from an orientation trace, never taken from
the input.

Crossing-free closed components cannot be expressed in pure PD, so a
diagram carries an explicit free-loop counter; the text form uses O[k]
tokens for k free loops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .errors import (ArcMultiplicityError, FormatError, LetterOutOfRange,
                     NonPlanarDiagram, OrientationConflict)


@dataclass(frozen=True)
class Crossing:
    """One PD crossing: arcs counterclockwise from the incoming under-arc."""
    arcs: Tuple[int, int, int, int]
    sign: int  # +1 or -1, derived from the orientation trace

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise FormatError(f"crossing sign must be +-1, got {self.sign}")


class LinkDiagram:
    """An oriented link diagram: validated crossings plus free loops."""

    def __init__(self, crossings: Sequence[Tuple[int, int, int, int]],
                 free_loops: int = 0):
        if free_loops < 0:
            raise FormatError("negative free-loop count")
        raw = [tuple(int(a) for a in c) for c in crossings]
        for c in raw:
            if len(c) != 4:
                raise FormatError(f"crossing needs 4 arc labels, got {c}")
        self.free_loops = int(free_loops)
        signs, comps = _orient_and_sign(raw)
        _check_planar(raw)
        self.crossings: Tuple[Crossing, ...] = tuple(
            Crossing(arcs=c, sign=s) for c, s in zip(raw, signs))
        self._components_through_crossings = comps
        self.arcs = frozenset(a for c in raw for a in c)

    # --- basic invariants ---

    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def component_count(self) -> int:
        return self._components_through_crossings + self.free_loops

    def positive_count(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    def negative_count(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    # --- operations ---

    def mirror(self) -> "LinkDiagram":
        """Switch every crossing (vertical becomes horizontal and vice versa).

        In PD terms the tuple rotates so that the old over-strand becomes
        the new under-strand; all signs flip, the writhe negates.
        """
        new = []
        for c in self.crossings:
            a, b, cc, d = c.arcs
            if c.sign > 0:
                # over ran d -> b; new under-in is d
                new.append((d, a, b, cc))
            else:
                # over ran b -> d; new under-in is b
                new.append((b, cc, d, a))
        return LinkDiagram(new, self.free_loops)

    def relabeled(self) -> "LinkDiagram":
        """Same diagram with arcs renamed 1..2c in a deterministic order."""
        mapping: Dict[int, int] = {}
        nxt = 1
        for c in self.crossings:
            for a in c.arcs:
                if a not in mapping:
                    mapping[a] = nxt
                    nxt += 1
        return LinkDiagram([tuple(mapping[a] for a in c.arcs)
                            for c in self.crossings], self.free_loops)

    # --- text form ---

    def to_text(self) -> str:
        parts = [f"X[{c.arcs[0]},{c.arcs[1]},{c.arcs[2]},{c.arcs[3]}]"
                 for c in self.crossings]
        if self.free_loops:
            parts.append(f"O[{self.free_loops}]")
        return "PD[" + ",".join(parts) + "]"

    def __repr__(self):
        return f"LinkDiagram({self.to_text()})"

    def __eq__(self, other):
        return (isinstance(other, LinkDiagram)
                and self.free_loops == other.free_loops
                and tuple(c.arcs for c in self.crossings)
                == tuple(c.arcs for c in other.crossings))

    def __hash__(self):
        return hash((tuple(c.arcs for c in self.crossings), self.free_loops))


_PD_TOKEN = re.compile(r"([XO])\[([0-9,\s-]*)\]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse "PD[X[a,b,c,d],...,O[k]]" into a validated diagram."""
    s = text.strip()
    if not (s.startswith("PD[") and s.endswith("]")):
        raise FormatError(f"not a PD expression: {text!r}")
    body = s[3:-1].strip()
    crossings = []
    free_loops = 0
    pos = 0
    while pos < len(body):
        m = _PD_TOKEN.match(body, pos)
        if not m:
            raise FormatError(f"bad PD token near {body[pos:pos + 20]!r}")
        kind, inner = m.group(1), m.group(2)
        values = [int(v) for v in inner.split(",")] if inner.strip() else []
        if kind == "X":
            if len(values) != 4:
                raise FormatError(f"X token needs 4 labels: {m.group(0)}")
            crossings.append(tuple(values))
        else:
            if len(values) != 1 or values[0] < 0:
                raise FormatError(f"O token needs one nonnegative count: {m.group(0)}")
            free_loops += values[0]
        pos = m.end()
        if pos < len(body):
            if body[pos] != ",":
                raise FormatError(f"expected ',' near {body[pos:pos + 10]!r}")
            pos += 1
    return LinkDiagram(crossings, free_loops)


def _orient_and_sign(crossings: List[Tuple[int, int, int, int]]
                     ) -> Tuple[List[int], int]:
    """Trace arcs through the crossings; return signs and component count.

    Each arc label must occur exactly twice over all slots.  Entering a
    crossing at slot s exits at slot (s+2) % 4; slot 0 is always an
    incoming arc and slot 2 always outgoing, which forces the rest.
    """
    if not crossings:
        return [], 0

    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for slot, arc in enumerate(c):
            occurrences.setdefault(arc, []).append((ci, slot))
    for arc, occ in occurrences.items():
        if len(occ) != 2:
            raise ArcMultiplicityError(
                f"arc {arc} occurs {len(occ)} times (expected 2)")

    # head[arc] = (crossing, slot) where the arc points into the crossing
    head: Dict[int, Tuple[int, int]] = {}
    tail: Dict[int, Tuple[int, int]] = {}

    def set_head(arc, where):
        if arc in head:
            raise OrientationConflict(f"arc {arc} has two heads")
        head[arc] = where

    def set_tail(arc, where):
        if arc in tail:
            raise OrientationConflict(f"arc {arc} has two tails")
        tail[arc] = where

    visited = [[False] * 4 for _ in crossings]
    components = 0
    for ci0 in range(len(crossings)):
        if visited[ci0][0]:
            continue
        components += 1
        # walk the strand: arrive at slot0 of crossing ci0
        ci, slot = ci0, 0
        while not visited[ci][slot]:
            visited[ci][slot] = True
            arc_in = crossings[ci][slot]
            set_head(arc_in, (ci, slot))
            out_slot = (slot + 2) % 4
            visited[ci][out_slot] = True
            arc_out = crossings[ci][out_slot]
            set_tail(arc_out, (ci, out_slot))
            # continue along arc_out to its other occurrence
            occ = occurrences[arc_out]
            nxt = [o for o in occ if o != (ci, out_slot)]
            if not nxt:
                # the arc loops straight back into the same slot pair
                raise OrientationConflict(f"arc {arc_out} does not continue")
            ci, slot = nxt[0]

    # A closed walk may have started mid-strand only if slot0 was reached;
    # unvisited slots mean a strand never passes slot 0 of its crossing,
    # which cannot happen in a valid PD (every crossing has an under-in).
    for ci in range(len(crossings)):
        for slot in range(4):
            if not visited[ci][slot]:
                raise OrientationConflict(
                    f"crossing {ci} slot {slot} unreachable in orientation trace")

    signs = []
    for ci, c in enumerate(crossings):
        b, d = c[1], c[3]
        # over-strand occupies slots 1 and 3; exactly one is incoming
        b_in = head.get(b) == (ci, 1)
        d_in = head.get(d) == (ci, 3)
        if b_in == d_in:
            raise OrientationConflict(f"over-strand of crossing {ci} disoriented")
        signs.append(1 if d_in else -1)
    return signs, components


def _check_planar(crossings: List[Tuple[int, int, int, int]]) -> None:
    """Euler-characteristic check of the rotation system, per component.

    Darts are (crossing, slot) incidences; faces are orbits of
    "step clockwise, then traverse the arc".  A connected 4-valent
    diagram with V crossings embeds in the sphere iff it has V+2 faces.
    """
    if not crossings:
        return
    other_end: Dict[Tuple[int, int], Tuple[int, int]] = {}
    by_arc: Dict[int, List[Tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for slot, arc in enumerate(c):
            by_arc.setdefault(arc, []).append((ci, slot))
    for arc, (d1, d2) in by_arc.items():
        other_end[d1] = d2
        other_end[d2] = d1

    # connected components of the crossing graph
    comp = {}
    for ci in range(len(crossings)):
        if ci in comp:
            continue
        stack = [ci]
        comp[ci] = ci
        members = []
        while stack:
            cj = stack.pop()
            members.append(cj)
            for slot in range(4):
                ck = other_end[(cj, slot)][0]
                if ck not in comp:
                    comp[ck] = ci
                    stack.append(ck)
        # count faces on this component
        seen = set()
        faces = 0
        for cj in members:
            for slot in range(4):
                dart = (cj, slot)
                if dart in seen:
                    continue
                faces += 1
                while dart not in seen:
                    seen.add(dart)
                    cj2, s2 = dart
                    dart = other_end[(cj2, (s2 - 1) % 4)]
        if faces != len(members) + 2:
            raise NonPlanarDiagram(
                f"component with {len(members)} crossings has {faces} faces")


# --- braids -----------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    """A braid on m strands; letter k stands for sigma_k, -k for its inverse."""
    m: int
    letters: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.m < 1:
            raise FormatError(f"strand count must be >= 1, got {self.m}")
        for k in self.letters:
            if k == 0 or abs(k) >= self.m:
                raise LetterOutOfRange(
                    f"letter {k} invalid on {self.m} strands")

    def writhe(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)

    def permutation(self) -> List[int]:
        """Image of each strand position (0-based) under the braid."""
        perm = list(range(self.m))
        for k in self.letters:
            i = abs(k) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.m
        cycles = 0
        for s in range(self.m):
            if not seen[s]:
                cycles += 1
                while not seen[s]:
                    seen[s] = True
                    s = perm[s]
        return cycles

    def to_text(self) -> str:
        return f"m={self.m}: " + " ".join(str(k) for k in self.letters)

    def __repr__(self):
        return f"BraidWord({self.to_text()!r})"


def parse_braid(text: str) -> BraidWord:
    """Parse "m=<strands>: l1 l2 ..." into a braid word."""
    s = text.strip()
    m = re.match(r"^m\s*=\s*(\d+)\s*:\s*(.*)$", s)
    if not m:
        raise FormatError(f"not a braid expression: {text!r}")
    strands = int(m.group(1))
    rest = m.group(2).strip()
    letters = tuple(int(tok) for tok in rest.split()) if rest else ()
    return BraidWord(strands, letters)


def braid_closure(braid: BraidWord) -> LinkDiagram:
    """The link diagram of the braid closure.

    Strands run upward; sigma_k takes the strand at position k over the
    strand at position k+1, producing a +1 crossing.  Untouched strands
    close into free loops.
    """
    m = braid.m
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0]

    start = [fresh() for _ in range(m)]
    arcs = list(start)
    crossings = []
    touched = [False] * m
    for k in braid.letters:
        i = abs(k) - 1
        touched[i] = touched[i + 1] = True
        n1, n2 = fresh(), fresh()  # new arcs at positions i, i+1 above the crossing
        if k > 0:
            # under-in = arcs[i+1] at SE; ccw SE, NE, NW, SW
            crossings.append((arcs[i + 1], n2, n1, arcs[i]))
        else:
            # under-in = arcs[i] at SW; ccw SW, SE, NE, NW
            crossings.append((arcs[i], arcs[i + 1], n2, n1))
        arcs[i], arcs[i + 1] = n1, n2

    # closure: identify the top arc of each position with its bottom arc
    parent = list(range(counter[0] + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for pos in range(m):
        union(start[pos], arcs[pos])
    merged = [tuple(find(a) for a in c) for c in crossings]

    free_loops = sum(1 for pos in range(m) if not touched[pos])
    return LinkDiagram(merged, free_loops).relabeled()
