"""The reproduce-all runbook: every computer-checked claim with its expected verdict."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .catalog import build, verify_order_table
from .oracle import independent_verify
from .presentations import load_presentation
from .search import search
from .tss import gl2_tss_search

EXPECTED_FLAGS = {"PSL2:13": (1096, 1092), "PSL2:16": (4040, 4080)}


@dataclass
class RunbookItem:
    claim: str
    locus: str
    invocation: str
    expected: str
    slow: bool = False
    observed: str = ""
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.observed == self.expected

    def to_dict(self):
        return {"claim": self.claim, "locus": self.locus, "invocation": self.invocation,
                "expected": self.expected, "observed": self.observed, "ok": self.ok,
                "slow": self.slow, "wall_time": self.wall_time, "details": self.details}


_HOM = [
    ("1", "n=6 check: B6' -> PSL(2,7)", "bnp:6", "PSL2:7", "nontrivial", False),
    ("2", "n=6 check: B6 -> PGL(2,9)", "bn:6", "PGL2:9", "noncyclic", False),
    ("3", "n=6 check: B6 -> M10", "bn:6", "M10", "noncyclic", False),
    ("4", "n=7 check: B7' -> PSL(2,8)", "bnp:7", "PSL2:8", "nontrivial", False),
    ("5", "n=7 check: B7' -> PSL(2,11)", "bnp:7", "PSL2:11", "nontrivial", False),
    ("6", "n=7 check: B7' -> PSL(2,13)", "bnp:7", "PSL2:13", "nontrivial", False),
    ("7", "n=7 check: B7' -> PSL(2,16)", "bnp:7", "PSL2:16", "nontrivial", False),
    ("8", "n=7 check: B7' -> PSL(2,17)", "bnp:7", "PSL2:17", "nontrivial", False),
    ("9", "n=8 check: B8' -> PSL(3,3)", "bnp:8", "PSL3:3", "nontrivial", True),
    ("10", "n=8 check: B8' -> G2(2)' = PSU(3,3)", "bnp:8", "PSU3:3", "nontrivial", True),
    ("11", "n=8 check: B8' -> M11", "bnp:8", "M11", "nontrivial", True),
    ("12", "n=8 check: B8' -> PSL(3,4)", "bnp:8", "PSL3:4", "nontrivial", True),
]


def runbook_items() -> list[RunbookItem]:
    items = [RunbookItem(c, loc, f"hom check --presentation {p} --group {g} --mode {m}", "none", slow)
             for c, loc, p, g, m, slow in _HOM]
    items.append(RunbookItem("13", "GL2 check: no 3-element TSS in GL2(F_q), q = 2..5",
                             "tss enumerate --group GL2:q --k 3", "empty"))
    items.append(RunbookItem("14", "simple-group order table", "catalog verify",
                             "two flagged rows: PSL2:13, PSL2:16"))
    items.append(RunbookItem("15", "positive controls: B_n -> S_n and B_n' -> A_n, n = 5..8",
                             "hom check --presentation bn:n|bnp:n --group S:n|A:n", "all found"))
    return items


def _hom_params(claim: str):
    for c, _, p, g, m, _ in _HOM:
        if c == claim:
            return p, g, m
    raise KeyError(claim)


def _hom_check(pres, spec, mode, threads, cap):
    p = load_presentation(pres)
    G = build(spec)
    rep = search(p, G, mode, threads=threads, cap=cap)
    ok = all(independent_verify(p, G, w) for w in rep.witnesses)
    return rep, ok


def run_item(item: RunbookItem, threads: int = 1, cap: int | None = None) -> RunbookItem:
    t0 = time.perf_counter()
    c = item.claim
    if c in {x[0] for x in _HOM}:
        pres, spec, mode = _hom_params(c)
        rep, ok = _hom_check(pres, spec, mode, threads, cap)
        item.observed = rep.verdict if ok else "witness failed verification"
        item.details = {"nodes": rep.stats["nodes"], "exhaustive": rep.exhaustive,
                        "witnesses": len(rep.witnesses)}
    elif c == "13":
        counts = {q: len(gl2_tss_search(q, 3)) for q in (2, 3, 4, 5)}
        item.observed = "empty" if not any(counts.values()) else "nonempty"
        item.details = {"classes": {str(q): n for q, n in counts.items()}}
    elif c == "14":
        rows = verify_order_table()
        flagged = {r.spec: (r.printed, r.computed) for r in rows if r.flagged}
        bad = [r.spec for r in rows if r.formula != r.computed]
        item.observed = ("two flagged rows: PSL2:13, PSL2:16"
                         if flagged == EXPECTED_FLAGS and not bad else f"flagged {sorted(flagged)}")
        item.details = {"rows": [r.to_dict() for r in rows]}
    elif c == "15":
        verdicts = {}
        for n in (5, 6, 7, 8):
            for pres, spec, mode in ((f"bn:{n}", f"S:{n}", "noncyclic"), (f"bnp:{n}", f"A:{n}", "nontrivial")):
                rep, ok = _hom_check(pres, spec, mode, threads, cap)
                verdicts[f"{pres}->{spec}"] = rep.verdict if ok else "unverified"
        item.observed = "all found" if all(v == "found" for v in verdicts.values()) else "missing"
        item.details = {"verdicts": verdicts}
    else:
        raise KeyError(c)
    item.wall_time = time.perf_counter() - t0
    return item


def reproduce(claims=None, include_slow: bool = True, threads: int = 1, cap: int | None = None,
              progress=None) -> list[RunbookItem]:
    """Run the selected runbook items in order."""
    items = runbook_items()
    if claims is not None:
        wanted = {str(c) for c in claims}
        unknown = wanted - {i.claim for i in items}
        if unknown:
            raise KeyError(f"unknown claim ids {sorted(unknown)}")
        items = [i for i in items if i.claim in wanted]
    elif not include_slow:
        items = [i for i in items if not i.slow]
    for item in items:
        run_item(item, threads=threads, cap=cap)
        if progress is not None:
            progress(item)
    return items
