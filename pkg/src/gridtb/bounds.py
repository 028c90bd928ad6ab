"""Upper/lower bounds and the three-step certification procedure.

Bounds per chirality: the Kauffman bound -max-deg_a F - 1 on tb (with
the ruling-based improvement when the leading Dubrovnik coefficient has
a negative entry), the Khovanov bound min-deg_q Kh(q, t/q), and the
HOMFLY-PT bound -max-deg_a P - 1 on sl.  Arc index is squeezed between
breadth_a F + 2 / breadth_q Kh(q, t/q) from below and the arc number of
a supplied grid from above; when the Khovanov breadth meets the grid
size, the arc index and both tb values are certified outright.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from .errors import InconsistentRecord
from .grid import GridDiagram
from .khovanov import KhTable, kh_breadth, kh_tb_bound, khovanov
from .laurent import LaurentPoly2
from .skein import dubrovnik_transform, kauffman_F, homfly, leading_a_part


def kauffman_tb_bound(f: LaurentPoly2) -> int:
    return -f.max_deg("a") - 1


def improved_kauffman_tb_bound(f: LaurentPoly2) -> Tuple[int, bool]:
    """Kauffman bound, lowered by one when the ruling obstruction applies.

    The obstruction: the leading a-coefficient of the Dubrovnik
    transform has a negative coefficient.
    """
    lead = leading_a_part(dubrovnik_transform(f))
    applied = any(c < 0 for c in lead.terms.values())
    base = -f.max_deg("a") - 1
    return (base - 1, True) if applied else (base, False)


def homfly_sl_bound(p: LaurentPoly2) -> int:
    return -p.max_deg("a") - 1


def mfw_braid_lower(p: LaurentPoly2) -> int:
    return (p.breadth("a") + 2 + 1) // 2


def arc_bounds(f: LaurentPoly2, table: Optional[KhTable],
               grid: Optional[GridDiagram]):
    """(lower from Kauffman, lower from Khovanov, upper from the grid)."""
    lower_kauffman = f.breadth("a") + 2
    lower_khovanov = kh_breadth(table) if table is not None else None
    upper_grid = grid.n if grid is not None else None
    return lower_kauffman, lower_khovanov, upper_grid


@dataclass
class SideBounds:
    """Upper bounds for one chirality."""
    tb_upper_kauffman: int
    tb_upper_kauffman_improved: int
    improved_applied: bool
    tb_upper_khovanov: Optional[int]
    sl_upper_homfly: int


@dataclass
class Certified:
    value: int
    provenance: str


@dataclass
class BoundsReport:
    name: str
    knot: SideBounds
    mirror: SideBounds
    braid_index_lower_mfw: int
    arc_lower_kauffman: int
    arc_lower_khovanov: Optional[int]
    arc_upper_grid: Optional[int]
    certified_alpha: Optional[Certified] = None
    certified_tb: Optional[Certified] = None
    certified_tb_mirror: Optional[Certified] = None
    certified_sl: Optional[Certified] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "BoundsReport":
        def side(d):
            return SideBounds(**d)

        def cert(d):
            return Certified(**d) if d is not None else None

        return cls(
            name=data["name"], knot=side(data["knot"]),
            mirror=side(data["mirror"]),
            braid_index_lower_mfw=data["braid_index_lower_mfw"],
            arc_lower_kauffman=data["arc_lower_kauffman"],
            arc_lower_khovanov=data["arc_lower_khovanov"],
            arc_upper_grid=data["arc_upper_grid"],
            certified_alpha=cert(data["certified_alpha"]),
            certified_tb=cert(data["certified_tb"]),
            certified_tb_mirror=cert(data["certified_tb_mirror"]),
            certified_sl=cert(data["certified_sl"]),
        )


def _side_bounds(f: LaurentPoly2, p: LaurentPoly2,
                 table: Optional[KhTable]) -> SideBounds:
    improved, applied = improved_kauffman_tb_bound(f)
    return SideBounds(
        tb_upper_kauffman=kauffman_tb_bound(f),
        tb_upper_kauffman_improved=improved,
        improved_applied=applied,
        tb_upper_khovanov=kh_tb_bound(table) if table is not None else None,
        sl_upper_homfly=homfly_sl_bound(p),
    )


def certify(record, kh_mode: str = "scan", kh_limit: int = 20,
            skein_limit: int = 20) -> BoundsReport:
    """Assemble all bounds for a knot record and certify what is forced.

    Certification of the arc index follows the squeeze: when a grid
    with arc number equal to breadth_q Kh(q, t/q) exists, the grid is
    minimal and the Khovanov bound on tb is sharp for both chiralities,
    so alpha, tb and tb of the mirror are all certified.  Otherwise
    recorded values (with citations) may complete the certification;
    they are checked against the computed upper bounds first.
    """
    diagram = record.diagram()
    f = record.kauffman_polynomial(limit=skein_limit)
    p = record.homfly_polynomial(limit=skein_limit)
    f_mirror = f.substitute_mirror("a")
    p_mirror = p.substitute_mirror("a")

    table = None
    if diagram.crossing_count() <= kh_limit:
        table = khovanov(diagram, mode=kh_mode, limit=kh_limit)
    table_mirror = table.mirror_reflection() if table is not None else None

    grid = record.grid
    lower_k, lower_kh, upper_grid = arc_bounds(f, table, grid)
    report = BoundsReport(
        name=record.name,
        knot=_side_bounds(f, p, table),
        mirror=_side_bounds(f_mirror, p_mirror, table_mirror),
        braid_index_lower_mfw=mfw_braid_lower(p),
        arc_lower_kauffman=lower_k,
        arc_lower_khovanov=lower_kh,
        arc_upper_grid=upper_grid,
    )

    recorded = record.recorded

    if upper_grid is not None and lower_kh == upper_grid and table is not None:
        alpha = upper_grid
        tb = kh_tb_bound(table)
        report.certified_alpha = Certified(alpha, "bound-sharpness")
        report.certified_tb = Certified(tb, "bound-sharpness")
        report.certified_tb_mirror = Certified(-alpha - tb, "bound-sharpness")
    elif {"alpha", "tb", "tb_mirror"} <= recorded.keys():
        alpha = recorded["alpha"].value
        tb = recorded["tb"].value
        tbm = recorded["tb_mirror"].value
        if tb + tbm < -alpha:
            raise InconsistentRecord(
                f"{record.name}: recorded tb {tb} + {tbm} < -alpha {-alpha}")
        if report.knot.tb_upper_khovanov is not None \
                and tb > report.knot.tb_upper_khovanov:
            raise InconsistentRecord(
                f"{record.name}: recorded tb {tb} above the Khovanov bound")
        if upper_grid is not None and alpha > upper_grid:
            raise InconsistentRecord(
                f"{record.name}: recorded alpha {alpha} above grid size {upper_grid}")
        cite = "recorded-exception: "
        report.certified_alpha = Certified(alpha, cite + recorded["alpha"].citation)
        report.certified_tb = Certified(tb, cite + recorded["tb"].citation)
        report.certified_tb_mirror = Certified(tbm, cite + recorded["tb_mirror"].citation)

    if "sl" in recorded:
        report.certified_sl = Certified(
            recorded["sl"].value, "recorded-exception: " + recorded["sl"].citation)
    elif "braid_index" in recorded:
        b = recorded["braid_index"].value
        if 2 * b == p.breadth("a") + 2:
            # MFW is sharp, which forces sl = -max-deg_a P - 1 for both sides
            report.certified_sl = Certified(homfly_sl_bound(p), "bound-sharpness")
    return report
