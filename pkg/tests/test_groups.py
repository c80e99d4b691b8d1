import itertools

import numpy as np
import pytest

from braidquot.catalog import build
from braidquot.groups import CapExceeded, close_generators
from braidquot.perm import Permutation, parse_cycles


@pytest.mark.parametrize("spec", ["S:5", "PSL2:7", "GL2:3", "M10"])
def test_identity_and_determinism(spec):
    G = build(spec)
    assert G.perms[0].tolist() == list(range(G.degree))
    gens = [G.permutation(g) for g in G.generators]
    H = close_generators(gens)
    assert np.array_equal(H.perms, close_generators(gens).perms)


@pytest.mark.parametrize("spec", ["S:5", "A:6", "PSL2:8", "GL2:4", "D:6"])
def test_class_equation_and_orbit_stabilizer(spec):
    G = build(spec)
    cc = G.conjugacy_classes
    assert sum(cc.sizes()) == G.order
    for rep, members in zip(cc.representatives, cc.members):
        assert len(members) * len(G.centralizer(rep)) == G.order
        assert rep == members.min()
        y = cc.conjugator[members]
        assert np.array_equal(G.conj_many(rep, y), members)


def test_transporter_matches_brute_force(S4):
    G = S4
    for a, b in itertools.product(range(G.order), repeat=2):
        brute = [x for x in range(G.order) if G.conj(a, x) == b]
        assert G.transporter(a, b).tolist() == brute


def test_mul_many_matches_scalar():
    G = build("PSL2:7")
    rng = np.random.default_rng(1)
    a = rng.integers(0, G.order, 200)
    b = rng.integers(0, G.order, 200)
    assert G.mul_many(a, b).tolist() == [G.mul(int(x), int(y)) for x, y in zip(a, b)]


def test_product_convention_in_ids(S4):
    a = parse_cycles("(1 2)", 4)
    b = parse_cycles("(2 3)", 4)
    ia, ib = S4.index(a), S4.index(b)
    assert S4.permutation(S4.mul(ia, ib)) == a * b


def test_cap_exceeded():
    gens = [Permutation.from_cycles(7, [[0, 1]]), Permutation.from_cycles(7, [list(range(7))])]
    with pytest.raises(CapExceeded):
        close_generators(gens, cap=100)


def test_subgroup_order():
    G = build("S:6")
    t = [G.index(parse_cycles(c, 6)) for c in ("(1 2)", "(3 4)", "(5 6)")]
    assert G.subgroup_order(t) == 8
    assert G.subgroup_order([G.index(parse_cycles("(1 2 3 4 5 6)", 6))]) == 6
