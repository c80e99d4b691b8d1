"""Command-line interface.

    braidquot tss enumerate --group S:4 --k 3
    braidquot hom check --presentation bnp:7 --group PSL2:16 --mode nontrivial
    braidquot reproduce --all
    braidquot bound 8
    braidquot catalog verify

Exit codes: 0 when every expectation is met, 1 on a mismatch or bad input,
2 when a search hit its cap and no verdict was reached.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import GroupSpecError, OrderMismatch, build, verify_order_table
from .groups import CapExceeded
from .presentations import PresentationError, load_presentation
from .report import bound, emit_report, prior_bound
from .runbook import EXPECTED_FLAGS, reproduce
from .search import MODES, search
from .tss import enumerate_tss, inventory_to_dict

EXIT_OK, EXIT_MISMATCH, EXIT_INCONCLUSIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, keep 2 for capped searches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MISMATCH, f"{self.prog}: error: {message}\n")


def _cmd_tss(args) -> int:
    G = build(args.group)
    inv = enumerate_tss(G, args.k)
    print(f"{args.group} (order {G.order}): {len(inv)} class(es) of {args.k}-element TSS")
    for i, (t, size) in enumerate(zip(inv.classes, inv.orbit_sizes)):
        print(f"  [{i}] orbit {size}: " + ", ".join(G.label(x) for x in t.members))
    if args.json:
        emit_report("tss_inventory", inventory_to_dict(inv, args.group), args.json)
    if args.expect is not None and len(inv) != args.expect:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_hom(args) -> int:
    p = load_presentation(args.presentation)
    G = build(args.group)
    rep = search(p, G, args.mode, cap=args.cap, threads=args.threads)
    print(f"{args.presentation} -> {args.group} [{args.mode}]: {rep.verdict} "
          f"({len(rep.witnesses)} witness(es) up to conjugacy, {rep.stats['nodes']} nodes, "
          f"{rep.wall_time:.2f}s)")
    for lab in rep.witness_labels[:5]:
        print("  " + "  ".join(f"{g}={x}" for g, x in lab.items()))
    if args.json:
        emit_report("search", rep, args.json)
    if rep.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    if args.expect is not None and rep.verdict != args.expect:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    claims = args.claim or None

    def show(item):
        mark = "ok" if item.ok else "MISMATCH"
        print(f"[{item.claim:>2}] {mark:8} {item.locus}: expected {item.expected!r}, "
              f"observed {item.observed!r} ({item.wall_time:.1f}s)", flush=True)

    items = reproduce(claims, include_slow=not args.skip_slow, threads=args.threads,
                      cap=args.cap, progress=show)
    if args.json:
        emit_report("runbook", items, args.json)
    if any(i.observed == "inconclusive" for i in items):
        return EXIT_INCONCLUSIVE
    return EXIT_OK if all(i.ok for i in items) else EXIT_MISMATCH


def _cmd_bound(args) -> int:
    rows = []
    for n in args.n:
        b, prior = bound(n), prior_bound(n)
        rows.append({"n": n, "bound": b, "prior": prior})
        print(f"n={n}: bound {b}, prior bound {prior}")
    if args.json:
        emit_report("bound", rows, args.json)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    rows = verify_order_table()
    for r in rows:
        flag = "  FLAG printed value differs" if r.flagged else ""
        print(f"{r.name:16} {r.spec:8} printed {r.printed:6} formula {r.formula:6} computed {r.computed:6}{flag}")
    flagged = {r.spec: (r.printed, r.computed) for r in rows if r.flagged}
    if args.json:
        emit_report("order_table", rows, args.json)
    ok = flagged == EXPECTED_FLAGS and all(r.formula == r.computed for r in rows)
    print(f"{len(flagged)} flagged row(s): " + ", ".join(sorted(flagged)))
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="braidquot", description="TSS-pruned homomorphism searches from braid groups")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tss = sub.add_parser("tss", help="totally symmetric sets")
    tss_sub = tss.add_subparsers(dest="action", required=True, parser_class=_Parser)
    en = tss_sub.add_parser("enumerate", help="list TSS classes of a group")
    en.add_argument("--group", required=True)
    en.add_argument("--k", type=int, required=True)
    en.add_argument("--json")
    en.add_argument("--expect", type=int, help="expected number of classes")
    en.set_defaults(func=_cmd_tss)

    hom = sub.add_parser("hom", help="homomorphism searches")
    hom_sub = hom.add_subparsers(dest="action", required=True, parser_class=_Parser)
    chk = hom_sub.add_parser("check", help="search for a homomorphism")
    chk.add_argument("--presentation", required=True, help="bn:<n> or bnp:<n>")
    chk.add_argument("--group", required=True)
    chk.add_argument("--mode", required=True, choices=MODES)
    chk.add_argument("--json")
    chk.add_argument("--threads", type=int, default=1)
    chk.add_argument("--cap", type=int, help="maximum number of expanded nodes")
    chk.add_argument("--expect", choices=("none", "found"))
    chk.set_defaults(func=_cmd_hom)

    rep = sub.add_parser("reproduce", help="run the runbook of computer checks")
    sel = rep.add_mutually_exclusive_group()
    sel.add_argument("--all", action="store_true", help="every item (the default)")
    sel.add_argument("--claim", action="append", help="claim id, repeatable")
    rep.add_argument("--skip-slow", action="store_true", help="leave out the n=8 items")
    rep.add_argument("--threads", type=int, default=1)
    rep.add_argument("--cap", type=int)
    rep.add_argument("--json")
    rep.set_defaults(func=_cmd_reproduce)

    bd = sub.add_parser("bound", help="order bound for non-cyclic quotients of B_n")
    bd.add_argument("n", type=int, nargs="+")
    bd.add_argument("--json")
    bd.set_defaults(func=_cmd_bound)

    cat = sub.add_parser("catalog", help="group catalog")
    cat_sub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ver = cat_sub.add_parser("verify", help="check the simple-group order table")
    ver.add_argument("--json")
    ver.set_defaults(func=_cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (GroupSpecError, PresentationError, OrderMismatch, ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
