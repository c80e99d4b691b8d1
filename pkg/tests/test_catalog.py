import math

import pytest

from braidquot.catalog import (GroupSpec, GroupSpecError, OrderMismatch, build, catalog_specs,
                               load_generator_file, parse_generator_file, projective_line_action,
                               serialize_generator_file, verify_order_table, write_generator_file)
from braidquot.perm import parse_cycles


@pytest.mark.parametrize("spec,order", [
    ("S:5", 120), ("A:4", 12), ("C:5", 5), ("D:2", 4), ("D:12", 24), ("GL2:4", 180),
    ("SL2:5", 120), ("PSL2:8", 504), ("PGL2:9", 720), ("PSL3:3", 5616), ("PSU3:3", 6048),
    ("M10", 720), ("M11", 7920), ("GL3:2", 168)])
def test_orders(spec, order):
    assert build(spec).order == order


@pytest.mark.parametrize("bad", ["X:3", "A:2", "PSL2:6", "PSU3:4", "S:0", ""])
def test_bad_specs(bad):
    with pytest.raises(GroupSpecError):
        GroupSpec.parse(bad)


def test_element_orders_distinguish_order_720_groups():
    orders = {s: {build(s).element_order(x) for x in range(720)} for s in ("M10", "S:6", "PGL2:9")}
    assert orders["M10"] == {1, 2, 3, 4, 5, 8}
    assert 6 in orders["S:6"] and 8 not in orders["S:6"]
    assert 10 in orders["PGL2:9"]


def test_class_counts():
    want = {"PSL2:7": 6, "A:6": 7, "M10": 8, "PGL2:9": 11, "M11": 10, "PSU3:3": 14}
    for s, k in want.items():
        assert len(build(s).conjugacy_classes) == k


def test_generator_file_round_trip(tmp_path):
    gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2)", 5)]
    path = tmp_path / "s5.gens"
    write_generator_file(path, gens, 120, "test")
    gf = parse_generator_file(path.read_text())
    assert gf.generators == gens and gf.order == 120
    assert parse_generator_file(serialize_generator_file(gf)) == gf
    assert load_generator_file(path).order == 120
    assert build(f"file:{path}").order == 120


def test_generator_file_order_mismatch(tmp_path):
    path = tmp_path / "bad.gens"
    write_generator_file(path, [parse_cycles("(1 2 3)", 3)], 6, "wrong order on purpose")
    with pytest.raises(OrderMismatch):
        load_generator_file(path)


def test_projective_line_action_matches_psl_degree():
    points, act = projective_line_action(7)
    assert len(points) == 8
    G = build("PSL2:7")
    assert G.degree == 8
    m = G.matrices[G.generators[0]]
    assert sorted(act(m, i) for i in range(8)) == list(range(8))


def test_order_table_flags():
    rows = verify_order_table()
    flagged = {(r.spec, r.printed, r.computed) for r in rows if r.flagged}
    assert flagged == {("PSL2:13", 1096, 1092), ("PSL2:16", 4040, 4080)}
    for r in rows:
        assert r.formula == r.computed
        if r.spec.startswith("PSL2:"):
            q = int(r.spec.split(":")[1])
            assert r.computed == q * (q * q - 1) // math.gcd(2, q - 1)


def test_catalog_sorted_by_order():
    specs = catalog_specs(2000)
    orders = [build(s).order for s in specs]
    assert orders == sorted(orders) and max(orders) <= 2000
