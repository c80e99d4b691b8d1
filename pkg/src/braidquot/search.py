"""TSS-pruned homomorphism search from B_n or B_n' into a finite group.

The search assigns an element id to every generator of a presentation.  It
starts from the pruning hints: a hint tuple is a totally symmetric set in the
source, so its image is either a TSS of the same size (taken from the group's
inventory, one ordered representative per conjugacy class) or a single
element.  Remaining generators are filled in a fixed order compiled from the
relators.

Execution is batched: all nodes at the same depth share the same set of
known generators, so a node batch is an integer matrix (rows are partial
assignments, ``-1`` for unknown) and each propagation rule is a vectorized
word evaluation.  Branching expands every row by its own candidate list,
computed from centralizers, transporters and conjugacy classes.
"""

from __future__ import annotations

import threading
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .groups import GroupHandle
from .presentations import (Hint, Presentation, Word, evaluate_word, free_reduce, inverse_word,
                            satisfies_all_relators)
from .tss import enumerate_tss

MODES = ("noncyclic", "nontrivial", "all")
CHUNK = 1 << 17


class SearchCapExceeded(RuntimeError):
    pass


@dataclass
class SearchReport:
    presentation: str
    group: str
    mode: str
    verdict: str  # "none" | "found" | "inconclusive"
    witnesses: list[tuple[int, ...]]
    exhaustive: bool
    stats: dict
    wall_time: float = 0.0
    generators: list[str] = field(default_factory=list)
    witness_labels: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "presentation": self.presentation,
            "group": self.group,
            "mode": self.mode,
            "verdict": self.verdict,
            "exhaustive": self.exhaustive,
            "generators": list(self.generators),
            "witnesses": [list(w) for w in self.witnesses],
            "witness_labels": self.witness_labels,
            "stats": self.stats,
            "wall_time": self.wall_time,
        }


# -- mode predicate and verification --------------------------------------------

def check_mode(p: Presentation, mode: str):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "noncyclic" and p.kind != "braid":
        raise ValueError("mode 'noncyclic' needs a braid presentation")
    if mode == "nontrivial" and p.kind == "braid":
        raise ValueError("mode 'nontrivial' is for B_n' presentations")


def mode_holds(images, mode: str) -> bool:
    if mode == "noncyclic":
        return len(set(images)) > 1
    if mode == "nontrivial":
        return any(x != 0 for x in images)
    return True


def verify(p: Presentation, G: GroupHandle, images, mode: str) -> bool:
    """Every relator (and its shift translates) is trivial and the mode predicate holds."""
    images = [int(x) for x in images]
    if len(images) != len(p.generators):
        return False
    if any(evaluate_word(r, images, G) != 0 for r in p.relators):
        return False
    if p.shift is not None and not satisfies_all_relators(p, images, G):
        return False
    return mode_holds(images, mode)


def collapse_pruned(p: Presentation, hint: Hint, mode: str) -> bool:
    """Whether the branch sending every hint generator to one element may be skipped.

    Braid hints collapse to cyclic maps.  B_n' hints collapse to trivial maps;
    that consequence is only relied on for n >= 7, smaller n search the branch.
    """
    if mode == "all":
        return False
    if hint.collapse == "cyclic":
        return mode == "noncyclic"
    if hint.collapse == "trivial":
        return mode == "nontrivial" and p.n is not None and p.n >= 7
    return False


# -- word analysis -----------------------------------------------------------------

def _vars(w: Word) -> set[int]:
    return {g for g, _ in w}


def _rotations(w: Word):
    for src in (w, inverse_word(w)):
        for i in range(len(src)):
            yield src[i:] + src[:i]


def _determine_shape(w: Word, x: int):
    """Word ``W`` with ``x = W`` when ``x`` occurs once in relator ``w``."""
    for r in _rotations(w):
        if r[0] == (x, 1):
            return inverse_word(r[1:])
    raise AssertionError("no rotation starts with the unknown")


def _transporter_shape(w: Word, x: int):
    """``(A, B)`` with ``x`` in ``T(A, B)`` (i.e. ``x A x^-1 = B``) if ``w`` has that shape."""
    for r in _rotations(w):
        if r[0] != (x, 1):
            continue
        pos = [i for i, (g, _) in enumerate(r) if g == x]
        if len(pos) == 2 and r[pos[1]] == (x, -1):
            j = pos[1]
            return r[1:j], inverse_word(r[j + 1:])
    return None


def _conj_shapes(w: Word):
    """Records ``(x, y, A)`` with ``x = A y A^-1`` read off ``x A y^-1 A^-1``."""
    out = set()
    for r in _rotations(w):
        if len(r) < 2 or r[0][1] != 1:
            continue
        x = r[0][0]
        counts = defaultdict(int)
        for g, _ in r:
            counts[g] += 1
        for j in range(1, len(r)):
            y, e = r[j]
            if e != -1 or y == x or counts[x] != 1 or counts[y] != 1:
                continue
            A, B = r[1:j], r[j + 1:]
            if free_reduce(B) == inverse_word(free_reduce(A)):
                out.add((x, y, free_reduce(A)))
    return out


def _braid_pairs(w: Word):
    out = set()
    for r in _rotations(w):
        if len(r) == 6:
            x, y = r[0][0], r[1][0]
            if x != y and r == ((x, 1), (y, 1), (x, 1), (y, -1), (x, -1), (y, -1)):
                out.add((x, y))
    return out


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


# -- plan compilation --------------------------------------------------------------

@dataclass
class _Branch:
    var: int
    class_of: int | None                 # known generator in the same conjugacy component
    transporters: list[tuple[Word, Word]]
    centralizers: list[Word]
    root: bool = False


@dataclass
class _Plan:
    steps: list                          # ("det", var, word) | ("check", word) | ("hint", Hint) | ("branch", _Branch)
    order: list[int]


def compile_plan(p: Presentation, known: set[int], skip_hints: tuple[Hint, ...] = ()) -> _Plan:
    m = len(p.generators)
    known = set(known)
    uf = _UnionFind(m)
    conj_records = defaultdict(set)
    for r in p.relators:
        for x, y, A in _conj_shapes(r):
            uf.union(x, y)
            conj_records[(x, y)].add(A)
            conj_records[(y, x)].add(free_reduce(inverse_word(A)))
        for x, y in _braid_pairs(r):
            uf.union(x, y)
    pending = list(range(len(p.relators)))
    hints = [h for h in p.hints if h not in skip_hints]
    steps: list = []
    order: list[int] = []

    def settle():
        nonlocal pending, hints
        changed = True
        while changed:
            changed = False
            rest = []
            for i in pending:
                r = p.relators[i]
                unk = _vars(r) - known
                if not unk:
                    steps.append(("check", r))
                elif len(unk) == 1:
                    (x,) = unk
                    if sum(1 for g, _ in r if g == x) == 1:
                        steps.append(("det", x, _determine_shape(r, x)))
                        known.add(x)
                        order.append(x)
                        changed = True
                    else:
                        rest.append(i)
                else:
                    rest.append(i)
            pending = rest
        ready = [h for h in hints if set(h.generators) <= known]
        for h in ready:
            steps.append(("hint", h))
        hints = [h for h in hints if h not in ready]

    def score(x):
        tight = loose = 0
        for r in p.relators:
            vs = _vars(r)
            if x in vs:
                if vs - {x} <= known:
                    tight += 1
                if vs & known:
                    loose += 1
        return (tight, loose, -x)

    settle()
    first = not known
    while len(known) < m:
        x = max((g for g in range(m) if g not in known), key=score)
        comp = [g for g in known if uf.find(g) == uf.find(x)]
        trans, cents = [], []
        for i in pending:
            r = p.relators[i]
            if _vars(r) - known == {x}:
                shape = _transporter_shape(r, x)
                if shape is not None:
                    trans.append(shape)
        for (a, b), words in conj_records.items():
            if a != x or b in known:
                continue
            ws = sorted(w for w in words if _vars(w) <= known)
            for w1, w2 in zip(ws, ws[1:]):
                cents.append(free_reduce(w1 + inverse_word(w2)))
        steps.append(("branch", _Branch(x, min(comp) if comp else None, trans, cents, root=first)))
        first = False
        known.add(x)
        order.append(x)
        settle()
    return _Plan(steps, order)


# -- batched execution -------------------------------------------------------------

class _Runner:
    def __init__(self, p, G, mode, plan, cap, max_witnesses, inventories, counter):
        self.p, self.G, self.mode, self.plan = p, G, mode, plan
        self.cap = cap
        self.max_witnesses = max_witnesses
        self.inventories = inventories
        self.counter = counter
        self.leaves: list[tuple[int, ...]] = []
        self.nodes = 0
        self.domain_stats: dict[int, list[int]] = {}
        self.stop = False

    def eval(self, w: Word, rows: np.ndarray) -> np.ndarray:
        G = self.G
        acc = np.zeros(len(rows), dtype=np.intp)
        for g, e in w:
            col = rows[:, g]
            acc = G.mul_many(acc, col if e == 1 else G.inverse[col])
        return acc

    def run(self, rows: np.ndarray, start: int = 0):
        steps = self.plan.steps
        for si in range(start, len(steps)):
            if len(rows) == 0 or self.stop:
                return
            st = steps[si]
            if st[0] == "det":
                rows[:, st[1]] = self.eval(st[2], rows)
            elif st[0] == "check":
                rows = rows[self.eval(st[1], rows) == 0]
            elif st[0] == "hint":
                rows = self._hint_filter(rows, st[1])
            else:
                self._branch(rows, st[1], si)
                return
        self._leaves(rows)

    def _hint_filter(self, rows, hint: Hint):
        cols = list(hint.generators)
        inv = self.inventories[len(cols)]
        prune = collapse_pruned(self.p, hint, self.mode)
        keep = []
        for row in rows[:, cols].tolist():
            s = set(row)
            if len(s) == 1:
                keep.append(not prune)
            elif len(s) < len(row):
                keep.append(False)
            else:
                keep.append(inv.classify(row) is not None)
        return rows[np.array(keep, dtype=bool)]

    def _candidates(self, row: np.ndarray, br: _Branch, tvals, cvals, i: int) -> np.ndarray:
        G = self.G
        if br.root:
            return np.array(G.conjugacy_classes.representatives, dtype=np.intp)
        sets = []
        for (a, b) in tvals:
            sets.append(("t", int(a[i]), int(b[i])))
        for z in cvals:
            sets.append(("c", int(z[i])))
        if not sets:
            if br.class_of is not None:
                cc = G.conjugacy_classes
                return cc.members[cc.class_of[row[br.class_of]]]
            return np.arange(G.order, dtype=np.intp)

        def fetch(s):
            return G.transporter(s[1], s[2]) if s[0] == "t" else G.centralizer(s[1])

        arrs = [fetch(s) for s in sets]
        k = min(range(len(arrs)), key=lambda j: len(arrs[j]))
        cand = arrs[k]
        for j, s in enumerate(sets):
            if j == k or len(cand) == 0:
                continue
            if s[0] == "t":
                cand = cand[G.conj_many(s[1], cand) == s[2]]
            else:
                cand = cand[G.mul_many(cand, s[1]) == G.mul_many(s[1], cand)]
        if br.class_of is not None and len(cand):
            cls = G.conjugacy_classes.class_of
            cand = cand[cls[cand] == cls[row[br.class_of]]]
        return cand

    def _branch(self, rows, br: _Branch, si: int):
        tvals = [(self.eval(a, rows), self.eval(b, rows)) for a, b in br.transporters]
        cvals = [self.eval(z, rows) for z in br.centralizers]
        stats = self.domain_stats.setdefault(br.var, [0, 0, 0])
        buf_rows, buf_vals, size = [], [], 0
        for i in range(len(rows)):
            cand = self._candidates(rows[i], br, tvals, cvals, i)
            n = len(cand)
            stats[0] += 1
            stats[1] = max(stats[1], n)
            stats[2] += n
            if n == 0:
                continue
            buf_rows.append(np.repeat(rows[i:i + 1], n, axis=0))
            buf_vals.append(cand)
            size += n
            if size >= CHUNK:
                self._flush(buf_rows, buf_vals, br.var, si)
                buf_rows, buf_vals, size = [], [], 0
                if self.stop:
                    return
        if buf_rows:
            self._flush(buf_rows, buf_vals, br.var, si)

    def _flush(self, buf_rows, buf_vals, var, si):
        new = np.concatenate(buf_rows)
        new[:, var] = np.concatenate(buf_vals)
        self.nodes += len(new)
        if self.counter is not None:
            self.counter.add(len(new))
        self.run(new, si + 1)

    def _leaves(self, rows):
        for row in rows.tolist():
            if verify(self.p, self.G, row, self.mode):
                self.leaves.append(tuple(row))
                if self.max_witnesses is not None and len(self.leaves) >= self.max_witnesses:
                    self.stop = True
                    return


class _Counter:
    def __init__(self, cap):
        self.cap = cap
        self.total = 0
        self.lock = threading.Lock()

    def add(self, k):
        with self.lock:
            self.total += k
            if self.cap is not None and self.total > self.cap:
                raise SearchCapExceeded(f"node cap {self.cap} exceeded")


# -- canonical witnesses -------------------------------------------------------------

def canonical_witness(G: GroupHandle, images, anchor: int = 0) -> tuple[int, ...]:
    """Conjugate so ``images[anchor]`` is its class representative, then take the lexicographic minimum."""
    img = np.asarray(images, dtype=np.intp)
    cc = G.conjugacy_classes
    x = int(img[anchor])
    rep = int(cc.representatives[cc.class_of[x]])
    conj = G.transporter(x, rep)
    table = np.stack([G.conj_many(int(v), conj) for v in img], axis=1)
    order = np.lexsort(table.T[::-1])
    return tuple(int(v) for v in table[order[0]])


# -- entry points ----------------------------------------------------------------------

def _primary_hint(p: Presentation) -> Hint | None:
    if not p.hints:
        return None
    return max(p.hints, key=lambda h: (len(h.generators), -p.hints.index(h)))


def _root_rows(p, G, hint, mode, inventories, use_tss=True):
    """Root assignments for the hint tuple, TSS images first, then the collapsed branch."""
    m = len(p.generators)
    rows = []
    cols = list(hint.generators)
    if use_tss:
        for t in inventories[len(cols)].classes:
            r = [-1] * m
            for c, x in zip(cols, t.members):
                r[c] = x
            rows.append(r)
    if not collapse_pruned(p, hint, mode):
        for x in G.conjugacy_classes.representatives:
            r = [-1] * m
            for c in cols:
                r[c] = x
            rows.append(r)
    return rows


def search(p: Presentation, G: GroupHandle, mode: str, *, cap: int | None = None,
           threads: int = 1, max_witnesses: int | None = None,
           roots: list[list[int]] | None = None) -> SearchReport:
    """Decide whether a homomorphism satisfying ``mode`` exists, up to conjugation in ``G``.

    ``cap`` bounds the number of expanded nodes; hitting it yields verdict
    "inconclusive".  ``max_witnesses`` stops early once that many witnesses are
    found (the report is then not exhaustive).  ``roots`` overrides the hint
    root with explicit partial assignments (all sharing the same known set).
    """
    check_mode(p, mode)
    t0 = time.perf_counter()
    hint = _primary_hint(p)
    hint_sizes = {len(h.generators) for h in p.hints}
    inventories = {k: enumerate_tss(G, k) for k in sorted(hint_sizes)}
    stats: dict = {"tss_classes": {str(k): len(inv) for k, inv in inventories.items()},
                   "tss_candidates": sum(inv.candidates_tested for inv in inventories.values())}
    if roots is None:
        if hint is not None:
            roots = _root_rows(p, G, hint, mode, inventories)
            known = set(hint.generators)
        else:
            roots = [[-1] * len(p.generators)]
            known = set()
        skip = (hint,) if hint is not None else ()
    else:
        known = {i for i, v in enumerate(roots[0]) if v >= 0} if roots else set()
        skip = tuple(h for h in p.hints if set(h.generators) <= known)
    plan = compile_plan(p, known, skip)
    stats["order"] = [p.generators[g] for g in plan.order]
    stats["root_branches"] = len(roots)
    counter = _Counter(cap)

    def task(row):
        run = _Runner(p, G, mode, plan, cap, max_witnesses, inventories, counter)
        run.run(np.array([row], dtype=np.intp))
        return run

    runs: list[_Runner] = []
    inconclusive = False
    try:
        if threads > 1 and len(roots) > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                runs = list(ex.map(task, roots))
        else:
            for row in roots:
                runs.append(task(row))
                if max_witnesses is not None and sum(len(r.leaves) for r in runs) >= max_witnesses:
                    break
    except SearchCapExceeded:
        inconclusive = True

    anchor = hint.generators[0] if hint is not None else 0
    found = sorted({canonical_witness(G, w, anchor) for r in runs for w in r.leaves})
    if max_witnesses is not None:
        found = found[:max_witnesses]
    early = max_witnesses is not None and len(found) >= max_witnesses
    stats["nodes"] = counter.total
    dom: dict[str, list[int]] = {}
    for r in runs:
        for v, (cnt, mx, tot) in r.domain_stats.items():
            d = dom.setdefault(p.generators[v], [0, 0, 0])
            d[0] += cnt
            d[1] = max(d[1], mx)
            d[2] += tot
    stats["domain_sizes"] = {k: {"branches": v[0], "max": v[1], "total": v[2]} for k, v in sorted(dom.items())}
    if inconclusive:
        verdict = "inconclusive"
    else:
        verdict = "found" if found else "none"
    rep = SearchReport(p.name, getattr(G, "spec", G.name), mode, verdict, found,
                       exhaustive=not inconclusive and not early, stats=stats,
                       wall_time=time.perf_counter() - t0, generators=list(p.generators))
    rep.witness_labels = [{g: G.label(x) for g, x in zip(p.generators, w)} for w in found]
    return rep


# -- scalar propagation --------------------------------------------------------------

def propagate(p: Presentation, G: GroupHandle, partial, domains: dict[int, np.ndarray] | None = None):
    """Narrow per-generator candidate sets to a fixed point; ``None`` on contradiction.

    ``partial`` maps generator index to element id (or is a list with ``None``
    for unknowns).  Returned domains are sorted id arrays; assigned generators
    get singleton domains.
    """
    m = len(p.generators)
    if not isinstance(partial, dict):
        partial = {i: v for i, v in enumerate(partial) if v is not None}
    val = {int(k): int(v) for k, v in partial.items()}
    dom = {g: np.arange(G.order, dtype=np.intp) for g in range(m)}
    if domains:
        for g, d in domains.items():
            dom[g] = np.asarray(d, dtype=np.intp)
    for g, v in val.items():
        if v not in set(dom[g].tolist()):
            return None
        dom[g] = np.array([v], dtype=np.intp)
    uf = _UnionFind(m)
    for r in p.relators:
        for x, y, _ in _conj_shapes(r):
            uf.union(x, y)
        for x, y in _braid_pairs(r):
            uf.union(x, y)
    cc = G.conjugacy_classes

    def ev(w):
        return evaluate_word(w, val, G)

    changed = True
    while changed:
        changed = False
        for g in range(m):
            if g in val:
                continue
            same = [h for h in val if uf.find(h) == uf.find(g)]
            if same:
                d = dom[g]
                d2 = d[cc.class_of[d] == cc.class_of[val[same[0]]]]
                if len(d2) < len(d):
                    dom[g], changed = d2, True
        for r in p.relators:
            unk = _vars(r) - set(val)
            if not unk:
                if ev(r) != 0:
                    return None
                continue
            if len(unk) != 1:
                continue
            (x,) = unk
            d = dom[x]
            if sum(1 for g, _ in r if g == x) == 1:
                v = ev(_determine_shape(r, x))
                d2 = d[d == v]
            else:
                shape = _transporter_shape(r, x)
                if shape is not None:
                    a, b = ev(shape[0]), ev(shape[1])
                    d2 = np.intersect1d(d, G.transporter(a, b))
                else:
                    rows = np.full((len(d), m), -1, dtype=np.intp)
                    for g, v in val.items():
                        rows[:, g] = v
                    rows[:, x] = d
                    acc = np.zeros(len(d), dtype=np.intp)
                    for g, e in r:
                        col = rows[:, g]
                        acc = G.mul_many(acc, col if e == 1 else G.inverse[col])
                    d2 = d[acc == 0]
            if len(d2) < len(d):
                dom[x], changed = d2, True
            if len(dom[x]) == 0:
                return None
        for g in range(m):
            if g not in val and len(dom[g]) == 1:
                val[g] = int(dom[g][0])
                changed = True
    return dom


# -- Klein-triple incompatibility ------------------------------------------------------

@dataclass
class KleinReport:
    group: str
    triples: list[tuple[int, ...]]
    extensions: list[tuple[int, ...] | None]

    @property
    def all_blocked(self) -> bool:
        return all(e is None for e in self.extensions)


def klein_triples(G: GroupHandle) -> list[tuple[int, ...]]:
    """3-element TSS representatives made of involutions with ``a b = c``."""
    inv = enumerate_tss(G, 3)
    out = []
    for t in inv.classes:
        a, b, c = t.members
        if G.element_order(a) == 2 and G.mul(a, b) == c:
            out.append(t.members)
    return out


def klein_incompatibility_check(G: GroupHandle, triples=None) -> KleinReport:
    """Try to extend each triple, placed on (g1, g3, g5), to a solution of the B_6 relators.

    The odd-indexed generators of B_6, and c1, c3, c5 of B_8', satisfy the
    same braid and commutation relations, so one check covers both.
    """
    from .presentations import braid_presentation

    if triples is None:
        triples = klein_triples(G)
        if not triples:
            raise ValueError(f"{G.name} has no Klein-type 3-element TSS")
    p = braid_presentation(6)
    ext = []
    for t in triples:
        row = [-1] * 5
        row[0], row[2], row[4] = (int(x) for x in t)
        rep = search(p, G, "all", roots=[row], max_witnesses=1)
        ext.append(rep.witnesses[0] if rep.witnesses else None)
    return KleinReport(getattr(G, "spec", G.name), [tuple(t) for t in triples], ext)
