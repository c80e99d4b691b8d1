"""Totally symmetric sets (TSS) in enumerated finite groups.

A TSS is a set of pairwise commuting elements such that every permutation of
the set is induced by conjugation inside the group.  Adjacent transpositions
generate the symmetric group, so it is enough to store one conjugating
witness per adjacent pair of an ordered member tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .groups import CapExceeded, GroupHandle

DEFAULT_CANDIDATE_CAP = 5 * 10**6


class BoundViolation(AssertionError):
    """An order bound that must hold for every TSS failed."""


@dataclass(frozen=True)
class TssCheck:
    ok: bool
    witnesses: tuple[int, ...] = ()
    reason: str = ""  # "commutation" | "class" | "witness" when not ok
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class TotSymSet:
    group: GroupHandle
    members: tuple[int, ...]
    witnesses: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.members)

    def verify(self) -> bool:
        """Re-check commutation and every witness by direct multiplication."""
        G, t = self.group, self.members
        if len(set(t)) != len(t) or len(self.witnesses) != len(t) - 1:
            return False
        if any(not G.commute(a, b) for a in t for b in t):
            return False
        for i, h in enumerate(self.witnesses):
            want = list(t)
            want[i], want[i + 1] = want[i + 1], want[i]
            if [G.conj(x, h) for x in t] != want:
                return False
        return True


@dataclass
class TssInventory:
    group: GroupHandle
    k: int
    classes: list[TotSymSet]
    orbit_sizes: list[int]
    candidates_tested: int = 0
    _orbit_index: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.classes)

    def classify(self, members) -> int | None:
        """Index of the listed class conjugate to the set ``members`` (or None)."""
        return self._orbit_index.get(tuple(sorted(int(m) for m in members)))

    def total_count(self) -> int:
        return sum(self.orbit_sizes)


def _check_ids(G: GroupHandle, members) -> tuple[int, ...]:
    t = tuple(int(m) for m in members)
    if any(not 0 <= m < G.order for m in t):
        raise ValueError("element id out of range")
    if len(set(t)) != len(t):
        raise ValueError("members must be distinct")
    return t


def _witness(G: GroupHandle, t: tuple[int, ...], i: int) -> int | None:
    cand = G.transporter(t[i], t[i + 1])
    if len(cand) == 0:
        return None
    keep = G.conj_many(t[i + 1], cand) == t[i]
    for j, x in enumerate(t):
        if j not in (i, i + 1):
            keep &= G.conj_many(x, cand) == x
    hits = cand[keep]
    return int(hits[0]) if len(hits) else None


def is_totally_symmetric(G: GroupHandle, members) -> TssCheck:
    t = _check_ids(G, members)
    for a in range(len(t)):
        for b in range(a + 1, len(t)):
            if not G.commute(t[a], t[b]):
                return TssCheck(False, reason="commutation", detail=f"positions {a} and {b} do not commute")
    cls = G.conjugacy_classes.class_of
    if len({int(cls[x]) for x in t}) > 1:
        return TssCheck(False, reason="class", detail="members lie in different conjugacy classes")
    wit = []
    for i in range(len(t) - 1):
        h = _witness(G, t, i)
        if h is None:
            return TssCheck(False, reason="witness", detail=f"no element swaps positions {i} and {i + 1}")
        wit.append(h)
    return TssCheck(True, tuple(wit))


def _commute_matrix(G: GroupHandle, ids: np.ndarray, chunk: int = 256) -> np.ndarray:
    m = len(ids)
    P = G.perms[ids]
    out = np.zeros((m, m), dtype=bool)
    for s in range(0, m, chunk):
        A = P[s:s + chunk]                 # (c, d)
        # (a b)[x] = b[a[x]] and (b a)[x] = a[b[x]]
        ab = P[:, A].transpose(1, 0, 2)    # [a, b, x] = b[a[x]]
        ba = A[:, P]                       # [a, b, x] = a[b[x]]
        out[s:s + chunk] = (ab == ba).all(axis=2)
    return out


def _set_orbit(G: GroupHandle, start: tuple[int, ...]) -> set[tuple[int, ...]]:
    orbit = {start}
    frontier = [start]
    gens = G.generators
    while frontier:
        arr = np.array(frontier, dtype=np.intp)
        nxt = []
        for g in gens:
            imgs = G.conj_many(arr, g)
            for row in np.sort(imgs, axis=1).tolist():
                key = tuple(row)
                if key not in orbit:
                    orbit.add(key)
                    nxt.append(key)
        frontier = nxt
    return orbit


def _cliques(adj: list[int], size: int, start_mask: int):
    """All increasing index tuples of ``size`` pairwise-adjacent vertices."""
    if size == 0:
        yield ()
        return
    mask = start_mask
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        mask ^= low
        rest = adj[i] & mask
        for tail in _cliques(adj, size - 1, rest):
            yield (i,) + tail


def enumerate_tss(G: GroupHandle, k: int, cap: int = DEFAULT_CANDIDATE_CAP) -> TssInventory:
    """Every cardinality-``k`` TSS of ``G``, one representative per conjugacy orbit.

    For each conjugacy class representative ``r``, the other members range
    over class elements commuting with ``r``; candidate sets are cliques of
    the commutation graph on those elements.  Survivors of the symmetry test
    are deduplicated by computing their conjugation orbits as sets.
    """
    if k < 2:
        raise ValueError("inventories are only built for k >= 2 (every singleton is a TSS)")
    cc = G.conjugacy_classes
    classes: list[TotSymSet] = []
    sizes: list[int] = []
    index: dict[tuple[int, ...], int] = {}
    tested = 0
    for rep, members in zip(cc.representatives, cc.members):
        if len(members) < k:
            continue
        cent = G.centralizer_mask(rep)
        cands = members[cent[members]]
        cands = cands[cands != rep]
        if len(cands) < k - 1:
            continue
        comm = _commute_matrix(G, cands)
        adj = [int("".join("1" if b else "0" for b in row[::-1]), 2) for row in comm]
        for clique in _cliques(adj, k - 1, (1 << len(cands)) - 1):
            tested += 1
            if tested > cap:
                raise CapExceeded(f"more than {cap} candidate sets")
            t = (rep,) + tuple(int(cands[i]) for i in clique)
            key = tuple(sorted(t))
            if key in index:
                continue
            chk = is_totally_symmetric(G, t)
            if not chk.ok:
                continue
            orbit = _set_orbit(G, key)
            idx = len(classes)
            for s in orbit:
                index[s] = idx
            classes.append(TotSymSet(G, t, chk.witnesses))
            sizes.append(len(orbit))
    return TssInventory(G, k, classes, sizes, tested, index)


def tss_p_value(t: TotSymSet) -> int:
    """Least ``p >= 1`` with ``a^p == b^p`` for all members ``a, b``."""
    G = t.group
    p = 1
    powers = list(t.members)
    while len(set(powers)) > 1:
        powers = [G.mul(x, m) for x, m in zip(powers, t.members)]
        p += 1
    return p


@dataclass
class SpanBoundReport:
    k: int
    p: int
    span_order: int
    span_bound: int
    group_order: int
    group_bound: int

    @property
    def ok(self) -> bool:
        return self.span_order >= self.span_bound and self.group_order >= self.group_bound


def check_span_bound(t: TotSymSet) -> SpanBoundReport:
    """|<T>| >= p^(k-1) and |G| >= 2^(k-1) k!; raises BoundViolation otherwise."""
    k = t.k
    p = tss_p_value(t) if k >= 2 else 1
    rep = SpanBoundReport(k, p, t.group.subgroup_order(t.members), p ** (k - 1),
                          t.group.order, 2 ** (k - 1) * math.factorial(k))
    if not rep.ok:
        raise BoundViolation(f"TSS {t.members} in {t.group.name}: {rep}")
    return rep


def gl2_tss_search(q: int, k: int) -> TssInventory:
    from .catalog import build

    return enumerate_tss(build(f"GL2:{q}"), k)


def gl_tss_probe(n: int, q: int, cap: int = 10**5) -> TssInventory:
    """Cardinality-n TSS in GL_{n-1}(F_q), for the small cases that fit under ``cap``."""
    from .catalog import GroupSpec, build, expected_order

    dim = n - 1
    if dim not in (2, 3):
        raise ValueError("only GL_2 and GL_3 are available")
    spec = GroupSpec.parse(f"GL{dim}:{q}")
    if expected_order(spec) > cap:
        raise CapExceeded(f"|GL_{dim}(F_{q})| = {expected_order(spec)} exceeds cap {cap}")
    return enumerate_tss(build(spec), n)


def inventory_to_dict(inv: TssInventory, spec: str | None = None) -> dict:
    G = inv.group
    return {
        "group": spec or G.name,
        "order": G.order,
        "k": inv.k,
        "class_count": len(inv.classes),
        "classes": [
            {"members": [G.label(x) for x in t.members],
             "member_ids": list(t.members),
             "witnesses": [G.label(h) for h in t.witnesses],
             "witness_ids": list(t.witnesses),
             "orbit_size": size}
            for t, size in zip(inv.classes, inv.orbit_sizes)
        ],
    }
