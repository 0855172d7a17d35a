from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torusjones import catalog
from torusjones.diagram import TorusDiagram, cable, disjoint_union, insert_zigzag
from torusjones.qalgebra import RootOfUnity, quantum_int
from torusjones.statesum import (
    ResourceLimitError,
    jhat_cabled,
    jhat_framed,
    jT,
    jT_cabled,
    jT_multi,
    phi,
    plan_contraction,
)
from torusjones.weave import weave_direct

NAMES = catalog.names()


def diagram(name: str) -> TorusDiagram:
    return catalog.get(name).diagram


def test_phi_of_bare_loop_is_the_color():
    assert phi(diagram("loop_1_0"), 7, RootOfUnity(11)) == pytest.approx(7)


def test_phi_of_empty_diagram():
    assert phi(TorusDiagram((), (), (), {}), 3, RootOfUnity(5)) == 1


def test_phi_of_unknot_at_n2():
    q = RootOfUnity(6)
    expected = complex(q.power(Fraction(1, 2)) + q.power(Fraction(-1, 2)))
    assert abs(phi(diagram("unknot"), 2, q) - expected) < 1e-12


def test_framed_two_parallel_loops():
    sk_two = disjoint_union(diagram("loop_1_0"), diagram("loop_1_0"))
    assert abs(jhat_framed(sk_two, 2, RootOfUnity(5)).value - 4) < 1e-12


def test_framed_unknot_n3():
    q = RootOfUnity(7)
    assert abs(jhat_framed(diagram("unknot"), 3, q).value - quantum_int(3, q)) < 1e-12


@pytest.mark.parametrize("name", ["W", "ell", "unknot", "split_B_loop"])
def test_multi_equals_framed_without_self_writhe(name):
    d = diagram(name)
    q = RootOfUnity(9)
    assert abs(jT_multi(d, 3, q).value - jhat_framed(d, 3, q).value) < 1e-10


def test_multi_removes_kink():
    q = RootOfUnity(8)
    res = jT_multi(diagram("unknot_kink_pos"), 2, q)
    assert res.q_exponent == Fraction(-3, 4)
    assert abs(res.value - quantum_int(2, q)) < 1e-12


def test_multi_prefactor_with_two_colors():
    d = disjoint_union(diagram("unknot_kink_pos"), diagram("unknot"))
    res = jT_multi(d, {0: 2, 1: 3}, RootOfUnity(9))
    assert res.q_exponent == Fraction(-3, 4)
    assert res.n == (2, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_unknot_is_quantum_integer(n):
    q = RootOfUnity(n + 4)
    assert abs(jT(diagram("unknot"), n, q).value - quantum_int(n, q)) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 6])
def test_unknot_vanishes_at_r_equal_n(n):
    assert abs(jT(diagram("unknot"), n, RootOfUnity(n)).value) < 1e-9


def test_weave_matches_closed_form_at_n3():
    direct = weave_direct(3).value
    assert abs(jT(diagram("W"), 3, RootOfUnity(3)).value - direct) < 1e-8 * direct


def test_cabled_color_one_is_one():
    assert abs(jT_cabled(diagram("W"), 1, RootOfUnity(5)).value - 1) < 1e-12


def test_cabled_unknot_n3():
    q = RootOfUnity(7)
    assert abs(jhat_cabled(diagram("unknot"), 3, q) - quantum_int(3, q)) < 1e-10


def test_cabled_weave_n3():
    q = RootOfUnity(7)
    a, b = jT(diagram("W"), 3, q).value, jT_cabled(diagram("W"), 3, q).value
    assert abs(a - b) < 1e-8 * max(1.0, abs(a))


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cabling_equivalence(name, n):
    q = RootOfUnity(9)
    a, b = jT(diagram(name), n, q).value, jT_cabled(diagram(name), n, q).value
    assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


def test_plan_arity_weave():
    assert plan_contraction(diagram("W"), 3).peak_arity <= 4


def test_plan_arity_closed_crossing():
    assert plan_contraction(diagram("unknot_kink_pos"), 2).peak_arity <= 2


def test_plan_arity_partial_cable_of_weave():
    w = diagram("W")
    verticals = {w.components["a"]: 2, w.components["c"]: 2}
    cabled = cable(w, verticals)
    assert len(cabled.crossings) == 8
    assert plan_contraction(cabled, 2).peak_arity <= 6


def test_plan_is_deterministic():
    d = diagram("W_4_2")
    assert plan_contraction(d, 3) == plan_contraction(d, 3)


@given(st.sampled_from(NAMES), st.sampled_from(NAMES), st.integers(2, 3))
def test_multiplicative_on_split_unions(a, b, n):
    q = RootOfUnity(7)
    da, db = diagram(a), diagram(b)
    joined = phi(disjoint_union(da, db), n, q)
    product = phi(da, n, q) * phi(db, n, q)
    assert abs(joined - product) <= 1e-10 * max(1.0, abs(product))


@given(st.sampled_from(NAMES), st.data(), st.booleans())
def test_zigzag_invariance(name, data, leftward):
    d = diagram(name)
    if not d.edges:
        return
    edge = data.draw(st.sampled_from([e.id for e in d.edges]))
    q = RootOfUnity(7)
    before = phi(d, 2, q)
    after = phi(insert_zigzag(d, edge, leftward=leftward), 2, q)
    assert abs(before - after) <= 1e-10 * max(1.0, abs(before))


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_weave_value_real_positive(n):
    v = jT(diagram("W"), n, RootOfUnity(n)).value
    assert v.real > 0
    assert abs(v.imag) < 1e-8 * abs(v)


@pytest.mark.parametrize("name", ["B_reversed_one"])
@pytest.mark.parametrize("n", [2, 3])
def test_framed_value_ignores_one_component_reversal(name, n):
    q = RootOfUnity(7)
    a = jhat_framed(diagram("B"), n, q).value
    b = jhat_framed(diagram(name), n, q).value
    assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_resource_cap_is_an_error():
    with pytest.raises(ResourceLimitError):
        phi(diagram("W"), 3, RootOfUnity(5), max_entries=10)


def test_extended_precision_agrees():
    d = diagram("B")
    a = jT(d, 10, RootOfUnity(10)).value
    b = jT(d, 10, RootOfUnity(10, "extended")).value
    assert abs(a - b) < 1e-10 * abs(a)


@pytest.mark.parametrize("color", [0, 8])
def test_color_out_of_range(color):
    with pytest.raises(ValueError):
        phi(diagram("unknot"), color, RootOfUnity(7))


def test_missing_component_color():
    with pytest.raises(ValueError):
        phi(diagram("W"), {0: 2}, RootOfUnity(7))


def test_result_metadata():
    res = jT(diagram("B"), 3, RootOfUnity(7))
    assert res.writhe_total == 3
    assert res.q_exponent == Fraction(-3 * 8, 4)
    assert np.isfinite(res.normalized_log)
