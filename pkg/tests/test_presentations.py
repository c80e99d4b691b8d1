import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from braidquot.catalog import build
from braidquot.presentations import (PresentationError, UnassignedGenerator, artin_action,
                                     bn_prime_presentation, bnprime_file, braid_presentation,
                                     braid_word, canonical_images, check_relators_in_braid_group,
                                     derive_bnprime_presentation, evaluate_word, format_word,
                                     free_reduce, inverse_word, load_presentation, parse_presentation,
                                     parse_word, satisfies_all_relators, serialize_presentation,
                                     shift_orbit, validate_presentation)
from braidquot.tss import is_totally_symmetric


def test_parse_and_format_words():
    gens = ["u", "v", "c1"]
    w = parse_word("u v^-1 c1^2 u^-1", gens)
    assert w == ((0, 1), (1, -1), (2, 1), (2, 1), (0, -1))
    assert format_word(w, gens) == "u v^-1 c1 c1 u^-1"
    with pytest.raises(PresentationError):
        parse_word("x", gens)


def test_evaluate_word_basics(S6):
    s = canonical_images(braid_presentation(6), S6)
    assert evaluate_word((), s, S6) == 0
    assert evaluate_word(((0, 1), (0, -1)), s, S6) == 0
    assert evaluate_word(braid_word("s1 s2 s1", 6), s, S6) == evaluate_word(braid_word("s2 s1 s2", 6), s, S6)
    with pytest.raises(UnassignedGenerator):
        evaluate_word(((1, 1),), [s[0], None], S6)


letters = st.tuples(st.integers(0, 3), st.sampled_from([1, -1]))


@settings(max_examples=200, deadline=None)
@given(st.lists(letters, max_size=20), st.lists(st.integers(1, 119), min_size=4, max_size=4))
def test_free_reduction_invariance(word, images):
    G = build("S:5")
    w = tuple(word)
    assert evaluate_word(free_reduce(w), images, G) == evaluate_word(w, images, G)
    assert evaluate_word(w + inverse_word(w), images, G) == 0


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_shipped_presentations_validate(n):
    p = bn_prime_presentation(n)
    assert validate_presentation(p, n).ok
    assert validate_presentation(braid_presentation(n), n).ok


def test_corrupted_relator_reports_index():
    p = bn_prime_presentation(6)
    bad = list(p.relators)
    bad[4] = bad[4] + ((0, 1),)
    q = dataclasses.replace(p, relators=bad)
    rep = validate_presentation(q, 6)
    assert rep.failures == [4]


def test_corrupted_file_refused(tmp_path):
    text = bnprime_file(6).read_text().replace("RELATOR u c1 u^-1 w^-1", "RELATOR u c1 u^-1 v^-1")
    path = tmp_path / "bad.pres"
    path.write_text(text)
    with pytest.raises(PresentationError):
        bn_prime_presentation(6, path=path)


def test_presentation_range_errors():
    with pytest.raises(PresentationError):
        bn_prime_presentation(4)
    with pytest.raises(PresentationError):
        load_presentation("bq:5")


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_relators_are_identities_in_the_braid_group(n):
    assert check_relators_in_braid_group(bn_prime_presentation(n)) == []


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_shipped_files_match_derivation(n):
    shipped = bn_prime_presentation(n)
    derived = derive_bnprime_presentation(n)
    assert derived.relators == shipped.relators
    assert derived.shift == shipped.shift
    assert derived.hints == shipped.hints


def test_serialize_round_trip():
    p = bn_prime_presentation(7)
    q = parse_presentation(serialize_presentation(p, "header"), name=p.name, kind=p.kind, n=7)
    assert (q.generators, q.relators, q.hints, q.shift) == (p.generators, p.relators, p.hints, p.shift)


def test_artin_action_detects_relations():
    n = 5
    assert artin_action(braid_word("s1 s2 s1", n), n) == artin_action(braid_word("s2 s1 s2", n), n)
    assert artin_action(braid_word("s1 s2", n), n) != artin_action(braid_word("s2 s1", n), n)


def test_hint_tuples():
    assert [braid_presentation(8).generators[i] for i in braid_presentation(8).hints[0].generators] == \
        ["s1", "s3", "s5", "s7"]
    for n, want in ((6, ["c1", "c3"]), (8, ["c1", "c3", "c5"])):
        p = bn_prime_presentation(n)
        assert [p.generators[i] for i in p.hints[0].generators] == want
    assert bn_prime_presentation(5).hints == []


@pytest.mark.parametrize("token", ["bn:5", "bn:8", "bnp:6", "bnp:7", "bnp:8"])
def test_hints_map_to_full_tss_under_canonical_images(token):
    p = load_presentation(token)
    G = build(f"S:{p.n}") if p.kind == "braid" else build(f"A:{p.n}")
    imgs = canonical_images(p, G)
    for h in p.hints:
        t = [imgs[i] for i in h.generators]
        assert len(set(t)) == len(t)
        assert is_totally_symmetric(G, t).ok


def test_shift_orbit_closes_on_canonical_images():
    p = bn_prime_presentation(7)
    G = build("A:7")
    imgs = canonical_images(p, G)
    orbit = list(shift_orbit(p, imgs, G))
    # conjugation by a transposition has order 2 on the image
    assert len(orbit) == 2
    assert satisfies_all_relators(p, imgs, G)
