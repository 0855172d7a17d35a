import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusjones import catalog
from torusjones.diagram import (
    BareLoop,
    DiagramError,
    Edge,
    Node,
    TorusDiagram,
    cable,
    check,
    disjoint_union,
    from_json,
    insert_zigzag,
    load_json,
    loads_json,
    normalize_class,
    validate,
    writhe,
)

SMALL = [e.name for e in catalog.entries() if len(e.diagram.crossings) <= 4]


def _loop_sums(d):
    out = []
    for loop in d.strand_loops():
        x = sum(d.edge_map[e].wrap[0] for e in loop)
        y = sum(d.edge_map[e].wrap[1] for e in loop)
        out.append((x, y))
    return out


def test_empty_diagram_is_valid():
    assert validate(TorusDiagram()) == []


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_entries_validate(name):
    assert validate(catalog.get(name).diagram) == []


def test_dangling_crossing():
    d = TorusDiagram(
        (Node("x", "cross_pos", ("a", "b", "c")),),
        (Edge("a"), Edge("b"), Edge("c")),
        (),
        {"a": 0, "b": 0, "c": 0},
    )
    errors = validate(d)
    assert any("dangling edge" in e for e in errors)
    with pytest.raises(DiagramError):
        check(d)


def test_orientation_clash():
    # two maxima joined on both sides: every edge has two heads
    d = TorusDiagram(
        (Node("p", "cap_e", ("a", "b")), Node("s", "cap_e", ("b", "a"))),
        (Edge("a"), Edge("b")),
        (),
        {"a": 0, "b": 0},
    )
    assert any("orientation clash" in e for e in validate(d))


def test_non_coprime_loop_class():
    d = TorusDiagram((), (), (BareLoop("l", (2, 4)),), {"l": 0})
    assert any("non-coprime" in e for e in validate(d))
    assert validate(TorusDiagram((), (), (BareLoop("l", (0, 0)),), {"l": 0})) == []


def test_normalize_class():
    assert normalize_class(-1, 2) == (1, -2)
    assert normalize_class(0, -1) == (0, 1)
    assert normalize_class(-2, -1) == (2, 1)
    assert normalize_class(0, 0) == (0, 0)


def test_writhe_examples():
    assert writhe(catalog.get("W").diagram)[0] == 0
    assert writhe(catalog.get("unknot_kink_pos").diagram) == (1, {0: 1})
    assert writhe(catalog.get("unknot_kink_neg").diagram)[0] == -1


@pytest.mark.parametrize("name", SMALL)
def test_writhe_splits_into_self_and_mixed(name):
    d = catalog.get(name).diagram
    total, per = writhe(d)
    signs = {"cross_pos": 1, "cross_neg": -1}
    mixed = sum(
        signs[v.kind] for v in d.crossings if d.components[v.ports[0]] != d.components[v.ports[1]]
    )
    assert total == sum(signs[v.kind] for v in d.crossings)
    assert total == sum(per.values()) + mixed


def test_b_crossings_are_all_between_components():
    total, per = writhe(catalog.get("B").diagram)
    assert total == 3 and per == {0: 0, 1: 0}


@pytest.mark.parametrize("name", SMALL)
def test_wrap_sums_close_up(name):
    d = catalog.get(name).diagram
    for x, y in _loop_sums(d):
        assert (x, y) == (0, 0) or math.gcd(x, y) == 1


def test_cable_examples():
    kink = catalog.get("unknot_kink_pos").diagram
    assert len(cable(kink, {0: 2}).crossings) == 4
    loop = catalog.get("loop_1_0").diagram
    tripled = cable(loop, {0: 3})
    assert len(tripled.bare_loops) == 3
    assert all(b.cls == loop.bare_loops[0].cls for b in tripled.bare_loops)
    assert cable(kink, {0: 0}) == TorusDiagram()


@pytest.mark.parametrize("name", ["unknot_kink_pos", "green_2_1", "fig8_null", "fig8_meridian"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_cable_writhe_of_knots(name, k):
    d = catalog.get(name).diagram
    c = cable(d, {0: k})
    assert writhe(c)[0] == k * k * writhe(d)[0]
    assert len(c.crossings) == k * k * len(d.crossings)


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("k", [2, 3, 4])
def test_uniform_cables_validate(name, k):
    d = catalog.get(name).diagram
    c = cable(d, {comp: k for comp in d.component_ids()})
    assert validate(c) == []
    assert len(c.crossings) == k * k * len(d.crossings)
    # every copy of a strand runs parallel to it
    assert sorted(_loop_sums(c)) == sorted(s for s in _loop_sums(d) for _ in range(k))


def test_json_roundtrip_and_strictness(tmp_path):
    d = catalog.get("ell").diagram
    again = loads_json(d.dumps())
    assert again.to_json() == d.to_json()
    path = tmp_path / "ell.json"
    path.write_text(d.dumps())
    assert load_json(path).to_json() == d.to_json()
    data = d.to_json()
    data["nodes"][0]["color"] = 3
    with pytest.raises(DiagramError):
        from_json(data)
    with pytest.raises(DiagramError):
        loads_json("{not json")
    with pytest.raises(DiagramError):
        from_json({"nodes": [], "edges": [], "extra": 1})


def test_schema_field_names():
    payload = json.loads(catalog.get("split_B_loop").diagram.dumps())
    assert set(payload) == {"nodes", "edges", "bare_loops", "components"}
    assert set(payload["nodes"][0]) == {"id", "kind", "ports"}
    assert set(payload["edges"][0]) == {"id", "wrap"}
    assert {"class", "mult"} <= set(payload["bare_loops"][0])


def test_minimal_bare_loop_json():
    d = from_json({"nodes": [], "edges": [], "bare_loops": [{"class": [1, 0], "mult": 2}]})
    assert d.bare_loops[0].mult == 2 and d.component_ids() == [0]


def test_disjoint_union_offsets_components():
    a, b = catalog.get("B").diagram, catalog.get("unknot").diagram
    u = disjoint_union(a, b)
    assert u.component_ids() == [0, 1, 2]
    assert len(u.crossings) == len(a.crossings)


@given(st.sampled_from(SMALL), st.data())
def test_zigzag_keeps_diagram_valid(name, data):
    d = catalog.get(name).diagram
    if not d.edges:
        return
    eid = data.draw(st.sampled_from([e.id for e in d.edges]))
    z = insert_zigzag(d, eid, leftward=data.draw(st.booleans()))
    assert validate(z) == []
    assert len(z.nodes) == len(d.nodes) + 2
    assert sorted(_loop_sums(z)) == sorted(_loop_sums(d))
