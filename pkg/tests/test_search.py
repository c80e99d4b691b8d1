import numpy as np
import pytest

from braidquot.catalog import build
from braidquot.oracle import independent_verify, naive_search
from braidquot.perm import parse_cycles
from braidquot.presentations import braid_presentation, canonical_images, load_presentation
from braidquot.search import (_primary_hint, canonical_witness, klein_incompatibility_check,
                              propagate, search, verify)
from braidquot.tss import enumerate_tss


def test_b5_to_s5_is_canonical():
    p = load_presentation("bn:5")
    G = build("S:5")
    rep = search(p, G, "noncyclic")
    assert rep.verdict == "found" and rep.exhaustive
    assert len(rep.witnesses) == 1
    canon = canonical_witness(G, canonical_images(p, G), p.hints[0].generators[0])
    assert rep.witnesses[0] == canon


@pytest.mark.parametrize("pres,spec,mode,verdict", [
    ("bn:6", "M10", "noncyclic", "none"),
    ("bn:6", "A:6", "noncyclic", "none"),
    ("bnp:6", "PSL2:7", "nontrivial", "none"),
    ("bnp:6", "A:6", "nontrivial", "found"),
    ("bn:6", "S:6", "noncyclic", "found"),
])
def test_verdicts(pres, spec, mode, verdict):
    p = load_presentation(pres)
    G = build(spec)
    rep = search(p, G, mode)
    assert rep.verdict == verdict
    for w in rep.witnesses:
        assert verify(p, G, w, mode) and independent_verify(p, G, w)


def test_mode_validation():
    with pytest.raises(ValueError):
        search(load_presentation("bnp:6"), build("S:4"), "noncyclic")
    with pytest.raises(ValueError):
        search(load_presentation("bn:6"), build("S:4"), "nontrivial")
    with pytest.raises(ValueError):
        search(load_presentation("bn:6"), build("S:4"), "surjective")


def test_verify_predicates(S6):
    p = braid_presentation(6)
    assert verify(p, S6, canonical_images(p, S6), "noncyclic")
    c6 = S6.index(parse_cycles("(1 2 3 4 5 6)", 6))
    assert verify(p, S6, [c6] * 5, "all")
    assert not verify(p, S6, [c6] * 5, "noncyclic")
    q = load_presentation("bnp:6")
    assert not verify(q, S6, [0] * len(q.generators), "nontrivial")


def test_propagate_braid_domain(S6):
    p = braid_presentation(6)
    g = canonical_images(p, S6)
    dom = propagate(p, S6, {0: g[0], 2: g[2], 4: g[4]})
    cc = S6.conjugacy_classes
    m = S6.mul

    def braids(a, b):
        return m(m(a, b), a) == m(m(b, a), b)

    brute = [x for x in range(S6.order)
             if cc.class_of[x] == cc.class_of[g[0]] and S6.commute(x, g[4])
             and braids(x, g[0]) and braids(x, g[2])]
    assert dom[1].tolist() == brute
    assert g[1] in brute


def test_propagate_contradiction(S6):
    p = braid_presentation(6)
    a = S6.index(parse_cycles("(1 2)", 6))
    b = S6.index(parse_cycles("(2 3)", 6))
    # s1 and s3 must commute
    assert propagate(p, S6, {0: a, 2: b}) is None


def test_klein_triple_does_not_extend():
    assert klein_incompatibility_check(build("S:4")).all_blocked
    rep = klein_incompatibility_check(build("PSL2:7"))
    assert rep.triples and rep.all_blocked


def test_standard_triple_extends(S6):
    t = [S6.index(parse_cycles(c, 6)) for c in ("(1 2)", "(3 4)", "(5 6)")]
    rep = klein_incompatibility_check(S6, [t])
    assert rep.extensions[0] is not None


def test_precondition():
    with pytest.raises(ValueError):
        klein_incompatibility_check(build("A:5"))


@pytest.mark.parametrize("pres", ["bn:5", "bnp:5", "bn:6", "bnp:6"])
@pytest.mark.parametrize("spec", ["S:4", "S:5", "A:5", "PSL2:7"])
def test_witness_sets_match_naive_search(pres, spec):
    p = load_presentation(pres)
    G = build(spec)
    hint = _primary_hint(p)
    anchor = hint.generators[0] if hint else 0
    for mode in ("all", "noncyclic" if p.kind == "braid" else "nontrivial"):
        pruned = set(search(p, G, mode).witnesses)
        naive = {canonical_witness(G, w, anchor) for w in naive_search(p, G, mode, max_solutions=None)}
        assert pruned == naive


@pytest.mark.parametrize("pres,spec", [("bn:6", "S:6"), ("bnp:6", "A:6"), ("bnp:5", "A:5")])
def test_naive_solutions_respect_hints(pres, spec):
    p = load_presentation(pres)
    G = build(spec)
    sols = naive_search(p, G, "all", max_solutions=None)
    assert sols
    for h in p.hints:
        inv = enumerate_tss(G, len(h.generators))
        for s in sols:
            img = [s[i] for i in h.generators]
            assert len(set(img)) == 1 or inv.classify(img) is not None


def test_inner_automorphism_closure():
    p = load_presentation("bnp:6")
    G = build("A:6")
    rep = search(p, G, "nontrivial")
    rng = np.random.default_rng(11)
    for w in rep.witnesses:
        for h in rng.integers(0, G.order, 20):
            conj = [G.conj(x, int(h)) for x in w]
            assert verify(p, G, conj, "nontrivial")
            assert canonical_witness(G, conj, p.hints[0].generators[0]) == w


def test_determinism_across_runs_and_workers():
    p = load_presentation("bnp:7")
    G = build("A:7")
    dicts = []
    for threads in (1, 1, 3):
        d = search(p, G, "nontrivial", threads=threads).to_dict()
        d.pop("wall_time")
        dicts.append(d)
    assert dicts[0] == dicts[1] == dicts[2]


def test_cap_gives_inconclusive():
    rep = search(load_presentation("bnp:7"), build("A:7"), "nontrivial", cap=5)
    assert rep.verdict == "inconclusive" and not rep.exhaustive


def test_max_witnesses_stops_early():
    rep = search(load_presentation("bn:6"), build("S:6"), "noncyclic", max_witnesses=1)
    assert rep.verdict == "found" and len(rep.witnesses) == 1 and not rep.exhaustive


@pytest.mark.parametrize("spec", ["PSL2:8", "PSL2:11"])
def test_n7_nonexistence_agrees_with_naive(spec):
    p = load_presentation("bnp:7")
    G = build(spec)
    assert search(p, G, "nontrivial").verdict == "none"
    assert naive_search(p, G, "nontrivial", max_solutions=1) == []
