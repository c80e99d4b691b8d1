import pytest
from hypothesis import given, strategies as st

from braidquot.perm import Permutation, compose, parse_cycles


def perms(degree):
    return st.permutations(list(range(degree))).map(lambda p: Permutation(tuple(p)))


def test_composition_convention_vector():
    # (a b)[i] = b[a[i]]: apply a first
    a = Permutation.from_cycles(3, [[0, 1]])
    b = Permutation.from_cycles(3, [[1, 2]])
    assert (a * b).images == (2, 0, 1)
    assert (b * a).images == (1, 2, 0)
    assert (a * b)(0) == b(a(0))


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_cycle_parsing_round_trip():
    p = parse_cycles("(1 3)(2 6 8 7 9 10 4 5)", 10)
    assert p.to_cycle_string() == "(1 3)(2 6 8 7 9 10 4 5)"
    assert parse_cycles(p.to_cycle_string(), 10) == p
    assert parse_cycles("()", 4).is_identity()


def test_cycle_parsing_rejects_repeats():
    with pytest.raises(ValueError):
        parse_cycles("(1 2)(2 3)", 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 5)", 4)


@given(perms(6), perms(6), perms(6))
def test_group_axioms(a, b, c):
    e = Permutation.identity(6)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(perms(7))
def test_order_from_cycles(a):
    k = a.order()
    out = Permutation.identity(7)
    for _ in range(k):
        out = out * a
    assert out.is_identity()
    assert Permutation.from_cycles(7, a.cycles()) == a
