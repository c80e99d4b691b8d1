"""Permutations on {0, ..., degree-1}.

Convention: permutations act on the right of points, so for a product
``a * b`` the point ``i`` goes to ``b[a[i]]`` (first ``a``, then ``b``).
Every product in the package, including word evaluation, uses this rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images!r}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for p in cyc:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} outside degree {degree}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def to_cycle_string(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + off) for p in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self.to_cycle_string(one_based=False)}; degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Product ``a`` then ``b``: ``i -> b(a(i))``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[x] for x in a.images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_based: bool = True) -> Permutation:
    """Parse cycle notation such as ``(1 2 3)(4 5)``; commas are optional."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation string")
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"could not parse permutation {text!r}")
    off = 1 if one_based else 0
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(tok) - off for tok in body.replace(",", " ").split()]
        if pts:
            cycles.append(pts)
    return Permutation.from_cycles(degree, cycles)
