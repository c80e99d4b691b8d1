"""Unpruned reference search and an independent witness checker.

The naive search knows nothing about totally symmetric sets, centralizers or
transporters.  Generators are assigned one at a time; each new generator
ranges over the whole group (the first one over conjugacy class
representatives only, which is safe because conjugating a solution gives a
solution) and a partial assignment survives when every relator whose
generators are all assigned evaluates to the identity.
"""

from __future__ import annotations

import numpy as np

from .groups import GroupHandle
from .perm import Permutation
from .presentations import Presentation

CHUNK = 1 << 18


def _naive_order(p: Presentation) -> list[int]:
    """Greedy order completing as many relators as early as possible."""
    m = len(p.generators)
    vs = [{g for g, _ in r} for r in p.relators]
    order: list[int] = []
    known: set[int] = set()
    while len(order) < m:
        def gain(x):
            done = sum(1 for s in vs if x in s and s <= known | {x})
            return (done, -x)
        x = max((g for g in range(m) if g not in known), key=gain)
        order.append(x)
        known.add(x)
    return order


def _holds_mode(images, mode):
    if mode == "noncyclic":
        return len(set(images)) > 1
    if mode == "nontrivial":
        return any(x != 0 for x in images)
    return True


def naive_search(p: Presentation, G: GroupHandle, mode: str,
                 max_solutions: int | None = 1) -> list[tuple[int, ...]]:
    """Solutions (root reduced by conjugacy only) satisfying the finite relators, shift closure and mode."""
    m = len(p.generators)
    order = _naive_order(p)
    known: set[int] = set()
    checks: list[list] = []
    for x in order:
        known.add(x)
        checks.append([r for r in p.relators if x in {g for g, _ in r} and {g for g, _ in r} <= known])
    everything = np.arange(G.order, dtype=np.intp)
    reps = np.array(G.conjugacy_classes.representatives, dtype=np.intp)
    found: list[tuple[int, ...]] = []

    def ev(w, rows):
        acc = np.zeros(len(rows), dtype=np.intp)
        for g, e in w:
            col = rows[:, g]
            acc = G.mul_many(acc, col if e == 1 else G.inverse[col])
        return acc

    def level(rows, depth):
        if len(rows) == 0:
            return False
        if depth == m:
            for row in rows.tolist():
                if independent_verify(p, G, row) and _holds_mode(row, mode):
                    found.append(tuple(row))
                    if max_solutions is not None and len(found) >= max_solutions:
                        return True
            return False
        x = order[depth]
        dom = reps if depth == 0 else everything
        per = max(1, CHUNK // len(dom))
        for s in range(0, len(rows), per):
            block = rows[s:s + per]
            new = np.repeat(block, len(dom), axis=0)
            new[:, x] = np.tile(dom, len(block))
            for r in checks[depth]:
                new = new[ev(r, new) == 0]
                if len(new) == 0:
                    break
            if level(new, depth + 1):
                return True
        return False

    level(np.full((1, m), -1, dtype=np.intp), 0)
    return found


def naive_verdict(p: Presentation, G: GroupHandle, mode: str) -> str:
    return "found" if naive_search(p, G, mode, max_solutions=1) else "none"


# -- independent evaluation ---------------------------------------------------------------

def _perm_word(w, perms: list[Permutation], degree: int) -> Permutation:
    out = Permutation.identity(degree)
    for g, e in w:
        out = out * (perms[g] if e == 1 else perms[g].inverse())
    return out


def independent_verify(p: Presentation, G: GroupHandle, images) -> bool:
    """Relator check through :class:`Permutation` arithmetic, shift closure included.

    Shares no code with the id-based evaluator: elements are rebuilt as
    permutations, and shift translates are iterated on permutation tuples.
    """
    perms = [G.permutation(int(x)) for x in images]
    d = G.degree
    seen = set()
    cur = tuple(perms)
    while cur not in seen:
        seen.add(cur)
        for r in p.relators:
            if not _perm_word(r, list(cur), d).is_identity():
                return False
        if p.shift is None:
            break
        nxt = list(cur)
        for g, w in p.shift.items():
            nxt[g] = _perm_word(w, list(cur), d)
        cur = tuple(nxt)
    return True
