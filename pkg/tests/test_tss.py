import itertools

import numpy as np
import pytest

from braidquot.catalog import build
from braidquot.groups import CapExceeded
from braidquot.perm import parse_cycles
from braidquot.tss import (check_span_bound, enumerate_tss, gl2_tss_search, gl_tss_probe,
                           inventory_to_dict, is_totally_symmetric, tss_p_value)


def ids(G, *cycles):
    return [G.index(parse_cycles(c, G.degree)) for c in cycles]


def brute_force_classes(G, k):
    """Conjugacy orbits of k-subsets of single classes that are TSS, by direct search."""
    found = set()
    orbits = []
    for members in G.conjugacy_classes.members:
        for t in itertools.combinations(members.tolist(), k):
            if t in found or not is_totally_symmetric(G, t).ok:
                continue
            orbit = {tuple(sorted(G.conj(x, h) for x in t)) for h in range(G.order)}
            found |= orbit
            orbits.append(orbit)
    return orbits


def test_klein_triple_in_s4(S4):
    inv = enumerate_tss(S4, 3)
    assert len(inv) == 1
    klein = sorted(ids(S4, "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"))
    assert sorted(inv.classes[0].members) == klein
    assert inv.orbit_sizes == [1]


def test_refusal_reasons(S6):
    assert is_totally_symmetric(S6, ids(S6, "(1 2)", "(2 3)")).reason == "commutation"
    assert is_totally_symmetric(S6, ids(S6, "(1 2)", "(3 4 5)")).reason == "class"
    A4 = build("A:4")
    # A4 permutes the Klein involutions cyclically, so no element swaps two of them
    assert is_totally_symmetric(A4, ids(A4, "(1 2)(3 4)", "(1 3)(2 4)")).reason == "witness"
    ok = is_totally_symmetric(S6, ids(S6, "(1 2)", "(3 4)", "(5 6)"))
    assert ok.ok and len(ok.witnesses) == 2


def test_witnesses_realise_transpositions(S6):
    for t in enumerate_tss(S6, 3).classes:
        assert t.verify()


def test_bad_input():
    G = build("S:4")
    with pytest.raises(ValueError):
        is_totally_symmetric(G, [1, 1])
    with pytest.raises(ValueError):
        is_totally_symmetric(G, [0, 99])
    with pytest.raises(ValueError):
        enumerate_tss(G, 1)


@pytest.mark.parametrize("spec,k", [("S:4", 2), ("S:4", 3), ("S:5", 2), ("S:5", 3), ("A:5", 2),
                                    ("D:6", 2), ("GL2:3", 2), ("PSL2:7", 2), ("PSL2:7", 3), ("S:6", 3)])
def test_enumeration_complete_against_brute_force(spec, k):
    G = build(spec)
    inv = enumerate_tss(G, k)
    brute = brute_force_classes(G, k)
    assert len(inv) == len(brute)
    assert sorted(inv.orbit_sizes) == sorted(len(o) for o in brute)
    for t in inv.classes:
        assert any(tuple(sorted(t.members)) in o for o in brute)


def test_classification_is_conjugation_invariant():
    G = build("S:6")
    inv = enumerate_tss(G, 3)
    rng = np.random.default_rng(7)
    for idx, t in enumerate(inv.classes):
        for h in rng.integers(0, G.order, 50):
            assert inv.classify([G.conj(x, int(h)) for x in t.members]) == idx


@pytest.mark.parametrize("spec", ["A:4", "D:3", "D:6", "D:12", "PSL2:8"])
def test_empty_inventories(spec):
    assert len(enumerate_tss(build(spec), 3)) == 0


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gl2_has_no_three_element_tss(q):
    assert len(gl2_tss_search(q, 3)) == 0


def test_gl3_probe():
    assert len(gl_tss_probe(4, 2)) == 0
    with pytest.raises(CapExceeded):
        gl_tss_probe(4, 4)
    with pytest.raises(ValueError):
        gl_tss_probe(6, 2)


def test_p_value_and_bounds(S6):
    for t in enumerate_tss(S6, 3).classes:
        p = tss_p_value(t)
        G = t.group
        assert len({G.power(x, p) for x in t.members}) == 1
        rep = check_span_bound(t)
        assert rep.ok and rep.span_order >= p ** 2


def test_candidate_cap():
    with pytest.raises(CapExceeded):
        enumerate_tss(build("S:6"), 2, cap=3)


def test_inventory_json_shape(S4):
    d = inventory_to_dict(enumerate_tss(S4, 3), "S:4")
    assert d["class_count"] == 1
    assert d["classes"][0]["members"] == ["(1 3)(2 4)", "(1 4)(2 3)", "(1 2)(3 4)"]
