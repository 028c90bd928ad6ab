"""Doubling constructions and the bound-refinement arithmetic.

The n-framed double D_n(K) is the 2-cable link with both components
oriented like K.  Three routes are provided: the braid-level double
(each generator s_i^e becomes (s_2i s_2i-1 s_2i+1 s_2i)^e on twice the
strands, plus a 2n-2w twist tail), the diagram-level blackboard
2-parallel with twist insertion, and the tb floor that the Legendrian
double construction yields.  Upper bounds computed for a double refine
to upper bounds on tb/sl of the underlying knot.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .diagram import BraidWord, LinkDiagram, braid_closure
from .errors import CrossingLimitExceeded, FormatError


def double_tb_floor(tb_k: int, framing: int) -> int:
    """Lower bound for tb of the n-framed double given tb(K) = tb_k."""
    if framing > tb_k:
        return 2 * tb_k + 2 * framing
    return 4 * framing


def braid_sl(braid: BraidWord) -> int:
    """Self-linking number of a braid: writhe minus strand count."""
    return braid.writhe() - braid.m


def braid_double(braid: BraidWord, framing: int) -> BraidWord:
    """The braid whose closure is the n-framed double of the closure.

    Each generator is replaced by its 4-letter cable block on 2m
    strands; sigma_1^(2n-2w) is appended to set the framing.  The
    result has sl = 2w - 2m + 2n.
    """
    letters: List[int] = []
    for k in braid.letters:
        i = abs(k)
        block = (2 * i, 2 * i - 1, 2 * i + 1, 2 * i)
        if k > 0:
            letters.extend(block)
        else:
            letters.extend(-j for j in reversed(block))
    twists = 2 * framing - 2 * braid.writhe()
    tail = 1 if twists > 0 else -1
    letters.extend(tail for _ in range(abs(twists)))
    return BraidWord(2 * braid.m, tuple(letters))


def diagram_double(diagram: LinkDiagram, framing: int,
                   limit: int = 80) -> LinkDiagram:
    """Blackboard 2-parallel of a knot diagram with framing adjustment.

    Every crossing becomes four crossings of the same sign; |n - w|
    full twists (two crossings each) are inserted just after the
    highest-numbered arc.  Crossing count is 4c + 2|n - w|.
    """
    if diagram.component_count() != 1:
        raise FormatError("diagram_double expects a knot diagram")
    w = diagram.writhe()
    c = diagram.crossing_count()
    total = 4 * c + 2 * abs(framing - w)
    if total > limit:
        raise CrossingLimitExceeded(
            f"double would have {total} crossings (limit {limit})")

    if c == 0:
        # doubled free loop: the framing twists close into a (2, 2n) braid
        if framing == 0:
            return LinkDiagram([], 2)
        letters = tuple((1 if framing > 0 else -1) for _ in range(2 * abs(framing)))
        return braid_closure(BraidWord(2, letters))

    # left/right parallel copies of arc x are 2x-1 / 2x; fresh labels follow
    counter = [2 * max(diagram.arcs)]

    def fresh() -> int:
        counter[0] += 1
        return counter[0]

    def left(x: int) -> int:
        return 2 * x - 1

    def right(x: int) -> int:
        return 2 * x

    crossings: List[Tuple[int, int, int, int]] = []
    for cr in diagram.crossings:
        a, b, c_out, d = cr.arcs
        u1, u2, o1, o2 = fresh(), fresh(), fresh(), fresh()
        if cr.sign < 0:
            # under runs a->c eastward, over b->d northward
            crossings.append((left(a), o1, u1, left(d)))
            crossings.append((u1, o2, left(c_out), right(d)))
            crossings.append((right(a), left(b), u2, o1))
            crossings.append((u2, right(b), right(c_out), o2))
        else:
            # over runs d->b southward
            crossings.append((left(a), o2, u1, right(d)))
            crossings.append((u1, o1, left(c_out), left(d)))
            crossings.append((right(a), right(b), u2, o2))
            crossings.append((u2, left(b), right(c_out), o1))

    twists = framing - w
    if twists:
        # cut the parallel pair of the highest original arc and chain
        # |n - w| full twists between the cut ends
        h = max(diagram.arcs)
        la, ra = left(h), right(h)
        la_end, ra_end = fresh(), fresh()
        crossings = _cut_heads(crossings, {la: la_end, ra: ra_end})
        a_in, b_in = la, ra
        for t in range(abs(twists)):
            last = t == abs(twists) - 1
            a_out = la_end if last else fresh()
            b_out = ra_end if last else fresh()
            m_a, m_b = fresh(), fresh()
            if twists > 0:
                crossings.append((b_in, m_a, m_b, a_in))
                crossings.append((m_a, b_out, a_out, m_b))
            else:
                crossings.append((a_in, b_in, m_a, m_b))
                crossings.append((m_b, m_a, b_out, a_out))
            a_in, b_in = a_out, b_out
    return LinkDiagram(crossings, 0).relabeled()


def _cut_heads(crossings, renames):
    """Relabel the head occurrence of each given arc to a fresh label."""
    from .diagram import _orient_and_sign
    signs, _ = _orient_and_sign(list(crossings))
    out = [list(arcs) for arcs in crossings]
    for ci, arcs in enumerate(crossings):
        for slot, arc in enumerate(arcs):
            if arc not in renames:
                continue
            sign = signs[ci]
            is_head = (slot == 0 or (slot == 3 and sign > 0)
                       or (slot == 1 and sign < 0))
            if is_head:
                out[ci][slot] = renames[arc]
    return [tuple(arcs) for arcs in out]


def refine_tb_from_cable(upper: int, framing: int) -> Optional[int]:
    """Upper bound on tb(K) from an upper bound on tb(D_n(K)).

    With m0 the least integer satisfying upper < 2*m0 + 2n: if m0 <= n
    the bound tb(K) <= m0 - 1 follows; otherwise nothing can be said.
    """
    m0 = (upper - 2 * framing) // 2 + 1
    if m0 <= framing:
        return m0 - 1
    return None


def refine_sl_from_cable(upper: int, framing: int) -> int:
    """Upper bound on sl(K) from an upper bound on sl(D_n(K)).

    sl(D_n(K)) >= 2 sl(K) + 2n gives sl(K) <= (upper - 2n) / 2, and
    self-linking numbers of knots are odd.
    """
    bound = (upper - 2 * framing) // 2
    return bound - 1 if bound % 2 == 0 else bound
