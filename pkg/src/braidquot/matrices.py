"""Small square matrices over F_q and their actions on vectors and points.

A matrix is a flat row-major tuple of encoded field elements.  Matrices act
on row vectors from the right, ``v -> v M``, which matches the permutation
convention in :mod:`braidquot.perm`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .fields import GF, FqElement, field


@dataclass(frozen=True)
class MatrixN:
    q: int
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise ValueError("entry count does not match dimension")

    @property
    def field(self) -> GF:
        return field(self.q)

    def __mul__(self, other: MatrixN) -> MatrixN:
        return MatrixN(self.q, self.n, matmul(self.field, self.n, self.entries, other.entries))

    def det(self) -> int:
        return det(self.field, self.n, self.entries)

    def entry(self, i: int, j: int) -> FqElement:
        return FqElement(self.q, self.entries[i * self.n + j])

    def rows(self) -> list[list[str]]:
        F = self.field
        return [[F.label(self.entries[i * self.n + j]) for j in range(self.n)] for i in range(self.n)]


def identity(n: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def matmul(F: GF, n: int, a, b) -> tuple[int, ...]:
    add, mul = F._add, F._mul
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            s = 0
            for k in range(n):
                s = add[s][mul[row[k]][b[k * n + j]]]
            out.append(s)
    return tuple(out)


def det(F: GF, n: int, a) -> int:
    if n == 1:
        return a[0]
    if n == 2:
        return F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]))
    if n == 3:
        m = F.mul
        t1 = m(a[0], F.sub(m(a[4], a[8]), m(a[5], a[7])))
        t2 = m(a[1], F.sub(m(a[3], a[8]), m(a[5], a[6])))
        t3 = m(a[2], F.sub(m(a[3], a[7]), m(a[4], a[6])))
        return F.add(F.sub(t1, t2), t3)
    raise ValueError("only dimensions up to 3 are supported")


def scale(F: GF, a, c: int) -> tuple[int, ...]:
    return tuple(F.mul(c, x) for x in a)


def projective_canonical(F: GF, a) -> tuple[int, ...]:
    """Rescale so the first non-zero entry is 1."""
    for x in a:
        if x:
            return scale(F, a, F.inv(x)) if x != 1 else tuple(a)
    raise ValueError("zero vector has no projective class")


def elementary(F: GF, n: int, i: int, j: int, t: int) -> tuple[int, ...]:
    """Transvection ``I + t E_ij``."""
    m = list(identity(n))
    m[i * n + j] = t
    return tuple(m)


def diagonal(entries) -> tuple[int, ...]:
    n = len(entries)
    return tuple(entries[i] if i == j else 0 for i in range(n) for j in range(n))


def vec_times(F: GF, n: int, v, a) -> tuple[int, ...]:
    add, mul = F._add, F._mul
    out = []
    for j in range(n):
        s = 0
        for k in range(n):
            s = add[s][mul[v[k]][a[k * n + j]]]
        out.append(s)
    return tuple(out)


def nonzero_vectors(F: GF, n: int) -> list[tuple[int, ...]]:
    return [v for v in product(range(F.q), repeat=n) if any(v)]


def projective_points(F: GF, n: int) -> list[tuple[int, ...]]:
    """Points of P^{n-1}(F_q) as vectors whose first non-zero entry is 1."""
    return [v for v in nonzero_vectors(F, n) if projective_canonical(F, v) == v]


def action_on(F: GF, n: int, points, a, projective: bool) -> tuple[int, ...]:
    """Images of ``points`` (indexed) under right multiplication by ``a``."""
    index = {p: i for i, p in enumerate(points)}
    out = []
    for p in points:
        w = vec_times(F, n, p, a)
        if projective:
            w = projective_canonical(F, w)
        out.append(index[w])
    return tuple(out)
