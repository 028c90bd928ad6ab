"""Knot records: named knots with grids, PDs, braids and recorded values.

Record files are JSON lines, one object per line:

    {"name": "3_1", "alternating": true, "crossings": 3,
     "grid": {"x": [3,4,5,1,2], "o": [1,2,3,4,5]},
     "pd": "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",
     "braid": "m=2: -1 -1 -1",
     "recorded": {"alpha": {"value": 5, "citation": "..."}},
     "notes": "..."}

Recorded values are external facts and always carry a citation.  All
representations present in one record must agree on the Kauffman
polynomial fingerprint; the check runs on demand (it is exercised over
the whole bundled table by the test suite).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional

from .diagram import LinkDiagram, braid_closure, parse_braid, parse_pd
from .errors import FingerprintMismatch, FormatError
from .grid import GridDiagram, grid_from_json, grid_to_link_diagram
from .laurent import LaurentPoly2
from .skein import homfly, kauffman_F

RECORDED_KEYS = ("alpha", "tb", "tb_mirror", "sl", "sl_mirror", "braid_index")


@dataclass(frozen=True)
class RecordedValue:
    value: int
    citation: str


@dataclass
class KnotRecord:
    name: str
    grid: Optional[GridDiagram] = None
    pd_text: Optional[str] = None
    braid_text: Optional[str] = None
    crossings: Optional[int] = None
    alternating: bool = False
    recorded: Dict[str, RecordedValue] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        if self.grid is None and not self.pd_text and not self.braid_text:
            raise FormatError(f"record {self.name}: no representation present")
        for key in self.recorded:
            if key not in RECORDED_KEYS:
                raise FormatError(f"record {self.name}: unknown recorded key {key}")

    # --- representations ---

    def diagram(self) -> LinkDiagram:
        """The preferred diagram: PD, else braid closure, else grid."""
        if self.pd_text:
            return parse_pd(self.pd_text)
        if self.braid_text:
            return braid_closure(parse_braid(self.braid_text))
        return grid_to_link_diagram(self.grid)

    def representations(self) -> List[LinkDiagram]:
        out = []
        if self.pd_text:
            out.append(parse_pd(self.pd_text))
        if self.braid_text:
            out.append(braid_closure(parse_braid(self.braid_text)))
        if self.grid is not None:
            out.append(grid_to_link_diagram(self.grid))
        return out

    def kauffman_polynomial(self, limit: int = 20) -> LaurentPoly2:
        return kauffman_F(self.diagram(), limit=limit)

    def homfly_polynomial(self, limit: int = 20) -> LaurentPoly2:
        return homfly(self.diagram(), limit=limit)

    def verify_fingerprints(self, limit: int = 20) -> None:
        """All representations must share one Kauffman fingerprint."""
        reps = self.representations()
        if len(reps) < 2:
            return
        prints = [kauffman_F(d, limit=limit) for d in reps]
        for other in prints[1:]:
            if other != prints[0]:
                raise FingerprintMismatch(
                    f"record {self.name}: representations disagree")


def record_from_json(obj: dict) -> KnotRecord:
    if "name" not in obj:
        raise FormatError("record without a name")
    grid = grid_from_json(obj["grid"]) if obj.get("grid") else None
    recorded = {}
    for key, val in (obj.get("recorded") or {}).items():
        if not isinstance(val, dict) or "value" not in val or "citation" not in val:
            raise FormatError(
                f"record {obj['name']}: recorded {key} needs value and citation")
        recorded[key] = RecordedValue(int(val["value"]), str(val["citation"]))
    return KnotRecord(
        name=str(obj["name"]),
        grid=grid,
        pd_text=obj.get("pd"),
        braid_text=obj.get("braid"),
        crossings=obj.get("crossings"),
        alternating=bool(obj.get("alternating", False)),
        recorded=recorded,
        notes=obj.get("notes", ""),
    )


def record_to_json(record: KnotRecord) -> dict:
    obj: dict = {"name": record.name}
    if record.crossings is not None:
        obj["crossings"] = record.crossings
    if record.alternating:
        obj["alternating"] = True
    if record.grid is not None:
        obj["grid"] = {"x": list(record.grid.x), "o": list(record.grid.o)}
    if record.pd_text:
        obj["pd"] = record.pd_text
    if record.braid_text:
        obj["braid"] = record.braid_text
    if record.recorded:
        obj["recorded"] = {k: {"value": v.value, "citation": v.citation}
                           for k, v in record.recorded.items()}
    if record.notes:
        obj["notes"] = record.notes
    return obj


def load_records(path) -> List[KnotRecord]:
    """Read a JSON-lines record file."""
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: bad JSON: {exc}") from None
            records.append(record_from_json(obj))
    return records


def bundled_records() -> List[KnotRecord]:
    """The knot table shipped with the package."""
    text = resources.files("gridtb").joinpath("data/knots.jsonl").read_text("utf-8")
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        records.append(record_from_json(json.loads(line)))
    return records


def find_record(records: List[KnotRecord], name: str) -> KnotRecord:
    for rec in records:
        if rec.name == name:
            return rec
    raise FormatError(f"no record named {name!r}")
