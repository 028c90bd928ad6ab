"""Grid diagrams (arc presentations) and their Legendrian invariants.

A grid of size n is a pair of disjoint permutations: column i carries an
X marker in row x[i] and an O marker in row o[i] (1-indexed, row 1 at
the bottom).  Vertical segments join the two markers of a column and
always cross over horizontal segments, which join the two markers of a
row.  Orientation convention: vertical segments run X -> O, horizontal
segments run O -> X.

With row 1 at the bottom, a southeast corner is a marker whose column
segment extends upward and whose row segment extends leftward.  Writhe
minus the southeast-corner count gives tb; writhe minus the count of
downward-traversed cusp corners gives sl.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .diagram import LinkDiagram
from .errors import FormatError, MarkerCollision, NotAPermutation, TooSmall


@dataclass(frozen=True)
class GridDiagram:
    """Validated grid diagram; immutable and safe to share."""
    x: Tuple[int, ...]
    o: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.x)

    def __post_init__(self):
        n = len(self.x)
        if n != len(self.o):
            raise FormatError("x and o sequences differ in length")
        if n < 2:
            raise TooSmall(f"grid size {n} < 2")
        for name, seq in (("x", self.x), ("o", self.o)):
            if sorted(seq) != list(range(1, n + 1)):
                raise NotAPermutation(f"{name} is not a permutation of 1..{n}")
        for i in range(n):
            if self.x[i] == self.o[i]:
                raise MarkerCollision(f"column {i + 1}: X and O share row {self.x[i]}")


@dataclass(frozen=True)
class GridInvariants:
    w: int
    c: int
    c_down: int
    tb: int
    sl: int
    r: int


def make_grid(x: Sequence[int], o: Sequence[int]) -> GridDiagram:
    """Validate marker sequences and build a grid diagram."""
    return GridDiagram(tuple(int(v) for v in x), tuple(int(v) for v in o))


def _inverse(perm: Tuple[int, ...]) -> List[int]:
    """inv[r] = 1-based position of value r; index 0 unused."""
    inv = [0] * (len(perm) + 1)
    for i, v in enumerate(perm, start=1):
        inv[v] = i
    return inv


def grid_components(grid: GridDiagram) -> int:
    """Closed components traced through alternating column and row segments."""
    xinv = _inverse(grid.x)
    seen = [False] * (grid.n + 1)
    components = 0
    for start in range(1, grid.n + 1):
        if seen[start]:
            continue
        components += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = xinv[grid.o[i - 1]]
    return components


def grid_invariants(grid: GridDiagram) -> GridInvariants:
    """Writhe, corner counts, tb, sl and rotation number of the grid."""
    n = grid.n
    x, o = grid.x, grid.o
    xinv, oinv = _inverse(x), _inverse(o)

    w = 0
    for i in range(1, n + 1):
        lo, hi = min(x[i - 1], o[i - 1]), max(x[i - 1], o[i - 1])
        s_v = 1 if o[i - 1] > x[i - 1] else -1
        for r in range(lo + 1, hi):
            clo, chi = min(xinv[r], oinv[r]), max(xinv[r], oinv[r])
            if clo < i < chi:
                s_h = 1 if xinv[r] > oinv[r] else -1
                w -= s_v * s_h

    c = 0        # southeast corners
    c_down = 0   # downward-traversed cusp corners
    for i in range(1, n + 1):
        xi, oi = x[i - 1], o[i - 1]
        # X marker at (i, xi)
        if xi < oi and i > oinv[xi]:
            c += 1
        # O marker at (i, oi)
        if oi < xi and i > xinv[oi]:
            c += 1
        if oi < xi:
            # vertical runs downward into O / out of X
            if xinv[oi] < i:
                c_down += 1   # SE corner at O traversed down then left
            if i < oinv[xi]:
                c_down += 1   # NW corner at X traversed left then down

    tb = w - c
    sl = w - c_down
    return GridInvariants(w=w, c=c, c_down=c_down, tb=tb, sl=sl, r=tb - sl)


def rotate_mirror(grid: GridDiagram) -> GridDiagram:
    """Rotate 90 degrees clockwise; represents the mirror knot type.

    Marker (i, j) moves to (j, n+1-i) with roles kept, which restores
    the vertical-over-horizontal convention.  The defining identity is
    tb(G) + tb(rotate_mirror(G)) = -n.
    """
    n = grid.n
    xinv, oinv = _inverse(grid.x), _inverse(grid.o)
    new_x = tuple(n + 1 - xinv[j] for j in range(1, n + 1))
    new_o = tuple(n + 1 - oinv[j] for j in range(1, n + 1))
    return GridDiagram(new_x, new_o)


def random_grid(n: int, seed: int) -> GridDiagram:
    """Uniform valid grid of size n, deterministic for a fixed seed."""
    if n < 2:
        raise TooSmall(f"grid size {n} < 2")
    rng = random.Random(seed)
    base = list(range(1, n + 1))
    while True:
        x = base[:]
        o = base[:]
        rng.shuffle(x)
        rng.shuffle(o)
        if all(a != b for a, b in zip(x, o)):
            return GridDiagram(tuple(x), tuple(o))


def grid_to_link_diagram(grid: GridDiagram) -> LinkDiagram:
    """PD-coded oriented diagram of the grid; verticals cross over.

    Components that meet no crossing are recorded as free loops.  The
    writhe of the result equals the grid writhe by construction.
    """
    n = grid.n
    x, o = grid.x, grid.o
    xinv, oinv = _inverse(x), _inverse(o)

    # crossing (i, r): vertical of column i passes the horizontal of row r
    crossing_id = {}
    for i in range(1, n + 1):
        lo, hi = min(x[i - 1], o[i - 1]), max(x[i - 1], o[i - 1])
        for r in range(lo + 1, hi):
            clo, chi = min(xinv[r], oinv[r]), max(xinv[r], oinv[r])
            if clo < i < chi:
                crossing_id[(i, r)] = len(crossing_id)

    # passages[k] = [under_in, over_in, under_out, over_out] arc labels
    passages: List[List[Optional[int]]] = [[None] * 4 for _ in crossing_id]
    svert = {}  # s_v per crossing column, for slot layout
    shorz = {}

    free_loops = 0
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0]

    seen_col = [False] * (n + 1)
    for start in range(1, n + 1):
        if seen_col[start]:
            continue
        first_arc = fresh()
        arc = first_arc
        met_crossing = False
        i = start
        while True:
            seen_col[i] = True
            # vertical segment of column i, from X to O
            r0, r1 = x[i - 1], o[i - 1]
            step = 1 if r1 > r0 else -1
            for r in range(r0 + step, r1, step):
                k = crossing_id.get((i, r))
                if k is not None:
                    met_crossing = True
                    svert[k] = step
                    nxt = fresh()
                    passages[k][1] = arc    # over in
                    passages[k][3] = nxt    # over out
                    arc = nxt
            # horizontal segment of row o[i-1], from O to X
            r = r1
            c0, c1 = oinv[r], xinv[r]
            step = 1 if c1 > c0 else -1
            for j in range(c0 + step, c1, step):
                k = crossing_id.get((j, r))
                if k is not None:
                    met_crossing = True
                    shorz[k] = step
                    nxt = fresh()
                    passages[k][0] = arc    # under in
                    passages[k][2] = nxt    # under out
                    arc = nxt
            i = xinv[r]
            if i == start:
                break
        if not met_crossing:
            free_loops += 1
        else:
            # close the component: the last arc is the first one
            for slots in passages:
                for idx in range(4):
                    if slots[idx] == arc:
                        slots[idx] = first_arc

    pd = []
    for (i, r), k in crossing_id.items():
        u_in, o_in, u_out, o_out = passages[k]
        if svert[k] * shorz[k] > 0:
            pd.append((u_in, o_in, u_out, o_out))
        else:
            pd.append((u_in, o_out, u_out, o_in))
    return LinkDiagram(pd, free_loops).relabeled()


# --- file formats -----------------------------------------------------------

_TEXT_RE = re.compile(r"^x\s*:\s*([0-9,\s]+)\s+o\s*:\s*([0-9,\s]+)$")


def parse_grid_text(text: str) -> GridDiagram:
    """Parse the plain-text form "x:2,1 o:1,2"."""
    m = _TEXT_RE.match(text.strip())
    if not m:
        raise FormatError(f"not a grid expression: {text!r}")
    x = [int(v) for v in m.group(1).split(",")]
    o = [int(v) for v in m.group(2).split(",")]
    return make_grid(x, o)


def grid_to_text(grid: GridDiagram) -> str:
    return ("x:" + ",".join(str(v) for v in grid.x)
            + " o:" + ",".join(str(v) for v in grid.o))


def grid_from_json(obj) -> GridDiagram:
    """Build a grid from a parsed {"name":..., "x":[...], "o":[...]} object."""
    if not isinstance(obj, dict) or "x" not in obj or "o" not in obj:
        raise FormatError("grid object needs 'x' and 'o' fields")
    return make_grid(obj["x"], obj["o"])


def load_grid_file(path: str) -> GridDiagram:
    """Load a grid from a JSON object file or the plain-text format."""
    with open(path, "r", encoding="utf-8") as fh:
        content = fh.read()
    stripped = content.strip()
    if stripped.startswith("{"):
        return grid_from_json(json.loads(stripped))
    return parse_grid_text(stripped)
