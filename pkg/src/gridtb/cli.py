"""Command-line interface.

Verbs: validate, invariants, poly, kh, bounds, certify, double.
Inputs come from --grid (file, inline "x:.. o:..", or random:N with
--seed), --pd, --braid, or --knot (bundled table).  Exit codes: 0 ok,
2 usage, 3 parse error, 4 crossing/memory limit, 5 inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bounds import BoundsReport, certify
from .cables import braid_double, braid_sl, diagram_double
from .diagram import BraidWord, LinkDiagram, braid_closure, parse_braid, parse_pd
from .errors import (CrossingLimitExceeded, FingerprintMismatch, FormatError,
                     GridTbError, InconsistentRecord, MemoryBudgetExceeded)
from .grid import (GridDiagram, grid_invariants, grid_components, grid_to_link_diagram,
                   grid_to_text, load_grid_file, parse_grid_text, random_grid)
from .khovanov import kh_breadth, kh_tb_bound, khovanov
from .records import bundled_records, find_record, load_records
from .skein import homfly, kauffman_F

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_LIMIT = 4
EXIT_INCONSISTENT = 5


def _add_source_flags(sub):
    sub.add_argument("--grid", help="grid file, inline 'x:.. o:..', or random:N")
    sub.add_argument("--pd", help="PD text or a file containing one")
    sub.add_argument("--braid", help="braid text 'm=<k>: l1 l2 ...'")
    sub.add_argument("--knot", help="name in the bundled (or --records) table")
    sub.add_argument("--records", help="JSON-lines record file replacing the bundle")
    sub.add_argument("--seed", type=int, default=0, help="seed for random grids")
    sub.add_argument("--limit", type=int, default=20, help="crossing limit")
    sub.add_argument("--json", action="store_true", help="emit JSON")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gridtb",
        description="grid-diagram invariants, knot polynomials, Khovanov "
                    "homology and arc-index certification")
    ap.add_argument("--version", action="version", version=f"gridtb {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    for verb, helptext in (
            ("validate", "parse and validate an input"),
            ("invariants", "grid invariants tb, sl, r"),
            ("kh", "Khovanov homology table"),
            ("bounds", "all tb/sl/arc bounds"),
            ("certify", "bounds plus certification"),
    ):
        s = sub.add_parser(verb, help=helptext)
        _add_source_flags(s)
        if verb == "kh":
            s.add_argument("--field", choices=("rational", "f2"), default="rational")
            s.add_argument("--mode", choices=("scan", "naive"), default="scan")

    s = sub.add_parser("poly", help="Kauffman or HOMFLY-PT polynomial")
    s.add_argument("which", choices=("kauffman", "homfly"))
    _add_source_flags(s)

    s = sub.add_parser("double", help="n-framed 2-cable of the input")
    _add_source_flags(s)
    s.add_argument("--framing", type=int, required=True)
    return ap


def _load_records_arg(args):
    if args.records:
        return load_records(args.records)
    return bundled_records()


def _source_grid(args) -> GridDiagram | None:
    if not args.grid:
        return None
    text = args.grid.strip()
    if text.startswith("random:"):
        return random_grid(int(text.split(":", 1)[1]), args.seed)
    if text.startswith("x:"):
        return parse_grid_text(text)
    return load_grid_file(text)


def _source_diagram(args) -> LinkDiagram:
    grid = _source_grid(args)
    if grid is not None:
        return grid_to_link_diagram(grid)
    if args.pd:
        text = args.pd.strip()
        if not text.startswith("PD[") and os.path.exists(text):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read().strip()
        return parse_pd(text)
    if args.braid:
        return braid_closure(parse_braid(args.braid))
    if args.knot:
        return find_record(_load_records_arg(args), args.knot).diagram()
    raise FormatError("no input: use --grid/--pd/--braid/--knot")


def _cmd_validate(args) -> int:
    grid = _source_grid(args)
    if grid is not None:
        inv = grid_invariants(grid)
        print(f"grid n={grid.n} components={grid_components(grid)} "
              f"tb={inv.tb} sl={inv.sl}")
        return EXIT_OK
    if args.knot:
        rec = find_record(_load_records_arg(args), args.knot)
        rec.verify_fingerprints(limit=args.limit)
        d = rec.diagram()
        print(f"record {rec.name}: representations agree; "
              f"c={d.crossing_count()} w={d.writhe()}")
        return EXIT_OK
    d = _source_diagram(args)
    print(f"diagram c={d.crossing_count()} w={d.writhe()} "
          f"components={d.component_count()}")
    return EXIT_OK


def _cmd_invariants(args) -> int:
    grid = _source_grid(args)
    if grid is None:
        raise FormatError("invariants needs --grid")
    inv = grid_invariants(grid)
    if args.json:
        print(json.dumps({"n": grid.n, "w": inv.w, "c": inv.c,
                          "c_down": inv.c_down, "tb": inv.tb, "sl": inv.sl,
                          "r": inv.r}, sort_keys=True))
    else:
        print(f"tb={inv.tb} sl={inv.sl} r={inv.r}")
    return EXIT_OK


def _cmd_poly(args) -> int:
    d = _source_diagram(args)
    poly = (kauffman_F if args.which == "kauffman" else homfly)(d, limit=args.limit)
    if args.json:
        print(json.dumps({"variables": list(poly.variables),
                          "text": poly.to_text()}))
    else:
        print(poly.to_text())
    return EXIT_OK


def _cmd_kh(args) -> int:
    d = _source_diagram(args)
    table = khovanov(d, coefficients=args.field, mode=args.mode, limit=args.limit)
    if args.json:
        print(json.dumps({"field": table.coefficients,
                          "triples": table.triples(),
                          "tb_bound": kh_tb_bound(table),
                          "breadth": kh_breadth(table)}))
    else:
        print("Kh(q,t) =", table.poincare().to_text())
        print(f"tb bound: {kh_tb_bound(table)}  arc breadth: {kh_breadth(table)}")
    return EXIT_OK


def _report_lines(report: BoundsReport):
    yield f"knot {report.name}"
    for label, side in (("K", report.knot), ("mirror", report.mirror)):
        improved = (f" improved={side.tb_upper_kauffman_improved}"
                    f"{' (applied)' if side.improved_applied else ''}")
        kh = side.tb_upper_khovanov
        yield (f"  [{label}] tb<= kauffman {side.tb_upper_kauffman}{improved}"
               f" khovanov {kh if kh is not None else 'n/a'}"
               f" ; sl<= {side.sl_upper_homfly}")
    yield (f"  braid index >= {report.braid_index_lower_mfw}"
           f" ; arc >= {report.arc_lower_kauffman} (kauffman)"
           f" / {report.arc_lower_khovanov} (khovanov)"
           f" ; arc <= {report.arc_upper_grid}")
    if report.certified_alpha is not None:
        yield (f"  certified: alpha={report.certified_alpha.value}"
               f" tb={report.certified_tb.value}"
               f" tb_mirror={report.certified_tb_mirror.value}"
               f" [{report.certified_alpha.provenance}]")
    if report.certified_sl is not None:
        yield (f"  certified: sl={report.certified_sl.value}"
               f" [{report.certified_sl.provenance}]")


def _cmd_bounds(args, with_certification: bool) -> int:
    if not args.knot:
        raise FormatError("bounds/certify need --knot")
    rec = find_record(_load_records_arg(args), args.knot)
    report = certify(rec, kh_limit=args.limit, skein_limit=args.limit)
    if not with_certification:
        report.certified_alpha = report.certified_tb = None
        report.certified_tb_mirror = report.certified_sl = None
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        for line in _report_lines(report):
            print(line)
    return EXIT_OK


def _cmd_double(args) -> int:
    if args.braid:
        braid = parse_braid(args.braid)
        doubled = braid_double(braid, args.framing)
        if args.json:
            print(json.dumps({"braid": doubled.to_text(),
                              "sl": braid_sl(doubled)}))
        else:
            print(doubled.to_text())
            print(f"sl={braid_sl(doubled)}")
        return EXIT_OK
    d = _source_diagram(args)
    doubled = diagram_double(d, args.framing, limit=max(args.limit, 80))
    if args.json:
        print(json.dumps({"pd": doubled.to_text(),
                          "crossings": doubled.crossing_count(),
                          "writhe": doubled.writhe()}))
    else:
        print(doubled.to_text())
        print(f"crossings={doubled.crossing_count()} writhe={doubled.writhe()}")
    return EXIT_OK


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.verb == "validate":
            return _cmd_validate(args)
        if args.verb == "invariants":
            return _cmd_invariants(args)
        if args.verb == "poly":
            return _cmd_poly(args)
        if args.verb == "kh":
            return _cmd_kh(args)
        if args.verb == "bounds":
            return _cmd_bounds(args, with_certification=False)
        if args.verb == "certify":
            return _cmd_bounds(args, with_certification=True)
        if args.verb == "double":
            return _cmd_double(args)
        raise FormatError(f"unknown verb {args.verb}")
    except (CrossingLimitExceeded, MemoryBudgetExceeded) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (FingerprintMismatch, InconsistentRecord) as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (FormatError, GridTbError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
