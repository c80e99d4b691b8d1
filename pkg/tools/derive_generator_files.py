"""Regenerate the permutation generator files in src/braidquot/data/.

M11 comes from the classical degree-11 pair; M10 is its point stabiliser;
PSU(3,3) is computed from unitary matrices over F_9 acting on the 28 isotropic
points of the Hermitian form x1*y3^3 + x2*y2^3 + x3*y1^3.

    python tools/derive_generator_files.py
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from braidquot import matrices as mat
from braidquot.catalog import write_generator_file
from braidquot.fields import field
from braidquot.groups import close_generators, close_matrix_generators
from braidquot.perm import Permutation, parse_cycles

DATA = Path(__file__).resolve().parents[1] / "src" / "braidquot" / "data"


def two_generators(G, rng, target):
    """Random pair of elements generating the whole group."""
    while True:
        a, b = (int(x) for x in rng.integers(1, G.order, size=2))
        if G.subgroup_order([a, b]) == target:
            return a, b


def m11():
    a = parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11)
    b = parse_cycles("(3 7 11 8)(4 10 5 6)", 11)
    G = close_generators([a, b])
    assert G.order == 7920
    return G, [a, b]


def m10(M11, rng):
    fix = np.flatnonzero(M11.perms[:, 10] == 10)
    assert len(fix) == 720
    stab = [Permutation(tuple(M11.perms[i, :10])) for i in fix]
    while True:
        i, j = rng.integers(1, len(stab), size=2)
        G = close_generators([stab[i], stab[j]])
        if G.order == 720:
            return [stab[i], stab[j]]


def psu33(rng):
    F = field(9)
    bar = F.frobenius
    n = 3
    J = (0, 0, 1, 0, 1, 0, 1, 0, 0)

    def unitary(m):
        mbar_t = tuple(bar(m[j * n + i]) for i in range(n) for j in range(n))
        return mat.matmul(F, n, mat.matmul(F, n, m, J), mbar_t) == J

    gens = []
    for a, b, c in itertools.product(range(9), repeat=3):
        up = (1, a, b, 0, 1, c, 0, 0, 1)
        lo = (1, 0, 0, a, 1, 0, b, c, 1)
        for m in (up, lo):
            if m != mat.identity(3) and unitary(m) and mat.det(F, n, m) == 1:
                gens.append(m)
    G = close_matrix_generators(9, 3, gens, projective=True)
    assert G.order == 6048, G.order
    iso = [i for i, p in enumerate(G.points)
           if F.add(F.add(F.mul(p[0], bar(p[2])), F.mul(p[1], bar(p[1]))), F.mul(p[2], bar(p[0]))) == 0]
    assert len(iso) == 28
    restricted = G.perms[:, iso]
    pos = {p: k for k, p in enumerate(iso)}
    perms = [Permutation(tuple(pos[x] for x in row)) for row in restricted.tolist()]
    while True:
        i, j = rng.integers(1, G.order, size=2)
        H = close_generators([perms[i], perms[j]])
        if H.order == 6048:
            return [perms[i], perms[j]]


def main():
    rng = np.random.default_rng(20240501)
    M11, gm11 = m11()
    write_generator_file(DATA / "M11.gens", gm11, 7920,
                         "classical degree-11 pair (1..11)(3 7 11 8)(4 10 5 6); order verified by closure")
    write_generator_file(DATA / "M10.gens", m10(M11, rng), 720,
                         "stabiliser of point 11 in the degree-11 M11 above, restricted to points 1..10")
    write_generator_file(DATA / "PSU3_3.gens", psu33(rng), 6048,
                         "SU(3,3) from unitary unitriangular matrices over F9 (form x1 y3^3 + x2 y2^3 + x3 y1^3), "
                         "acting on its 28 isotropic points; isomorphic to G2(2)'")


if __name__ == "__main__":
    main()
