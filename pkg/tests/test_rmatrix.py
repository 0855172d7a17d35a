import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusjones.checks import operator_errors
from torusjones.qalgebra import RootOfUnity, quantum_int
from torusjones.rmatrix import SparseTensor, cap_cup_tensors, crossing_tensor, mu_diagonal, operator_set, r_inverse, r_matrix


def qp(q, alpha):
    return complex(q.power(alpha))


@pytest.mark.parametrize("r", [5, 8, 12])
def test_two_dimensional_entries(r):
    q = RootOfUnity(r)
    R, Ri = r_matrix(2, q), r_inverse(2, q)
    expected_r = {
        (0, 0, 0, 0): qp(q, 0.25),
        (1, 1, 1, 1): qp(q, 0.25),
        (1, 0, 0, 1): qp(q, -0.25),
        (0, 1, 1, 0): qp(q, -0.25),
        (0, 1, 0, 1): qp(q, 0.25) - qp(q, -0.75),
    }
    expected_ri = {
        (0, 0, 0, 0): qp(q, -0.25),
        (1, 1, 1, 1): qp(q, -0.25),
        (1, 0, 0, 1): qp(q, 0.25),
        (0, 1, 1, 0): qp(q, 0.25),
        (1, 0, 1, 0): qp(q, -0.25) - qp(q, 0.75),
    }
    for tensor, expected in ((R, expected_r), (Ri, expected_ri)):
        for idx in itertools.product((0, 1), repeat=4):
            assert abs(tensor[idx] - expected.get(idx, 0)) <= 1e-12
        assert set(tensor.entries) == set(expected)


@pytest.mark.parametrize("n", range(1, 9))
def test_charge_conservation(n):
    q = RootOfUnity(n + 3)
    for t in (r_matrix(n, q), r_inverse(n, q)):
        assert all(i + j == k + l for (i, j, k, l) in t.entries)


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 9) for r in (n + 1, 13)])
def test_inverse_both_sides(n, r):
    q = RootOfUnity(r)
    a, b = r_matrix(n, q).matrix(), r_inverse(n, q).matrix()
    assert np.abs(a @ b - np.eye(n * n)).max() < 1e-10
    assert np.abs(b @ a - np.eye(n * n)).max() < 1e-10


def test_inverse_by_index_sum_n3():
    q = RootOfUnity(7)
    R, Ri = r_matrix(3, q).dense(), r_inverse(3, q).dense()
    prod = np.einsum("ijab,abkl->ijkl", R, Ri)
    assert np.abs(prod - np.einsum("ik,jl->ijkl", np.eye(3), np.eye(3))).max() < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_braid_relation_and_twist(n):
    for r in (max(n, 2) + 1, 11):
        inverse, braid, twist = operator_errors(n, RootOfUnity(r))
        assert inverse < 1e-10
        if n <= 5:
            assert braid < 1e-10
        assert twist < 1e-10


def test_mu_examples():
    q = RootOfUnity(9)
    assert np.allclose(mu_diagonal(2, q), [qp(q, -0.5), qp(q, 0.5)])
    assert np.allclose(mu_diagonal(1, q), [1])
    q11 = RootOfUnity(11)
    geometric = sum(qp(q11, (2 * j - 4) / 2) for j in range(5))
    assert abs(np.sum(mu_diagonal(5, q11)) - geometric) < 1e-12
    assert abs(geometric - quantum_int(5, q11)) < 1e-12


@given(st.integers(2, 30).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r - 1))))
def test_mu_trace_is_quantum_integer(rn):
    r, n = rn
    q = RootOfUnity(r)
    assert abs(np.sum(mu_diagonal(n, q)) - quantum_int(n, q)) < 1e-9


def test_extrema_tensors():
    q = RootOfUnity(6)
    ops = cap_cup_tensors(2, q)
    assert np.allclose(np.diag(ops["cap_emu"].dense()), [qp(q, -0.5), qp(q, 0.5)])
    assert np.allclose(ops["cap_e"].dense(), np.eye(2))
    assert np.allclose(ops["cup_nmu"].dense() @ ops["cap_emu"].dense(), np.eye(2))
    # zig-zag: a cup followed by a cap along one strand is the identity
    assert np.allclose(ops["cup_n"].dense() @ ops["cap_e"].dense(), np.eye(2))
    loop = np.einsum("ij,ij->", ops["cap_emu"].dense(), ops["cup_n"].dense())
    assert abs(loop - (qp(q, 0.5) + qp(q, -0.5))) < 1e-12


def test_out_of_range_colors():
    q = RootOfUnity(4)
    with pytest.raises(ValueError):
        r_matrix(5, q)
    with pytest.raises(ValueError):
        mu_diagonal(0, q)
    with pytest.raises(ValueError):
        crossing_tensor("cap_e", 2, 2, q)


def test_sparse_tensor_guards_and_dump():
    with pytest.raises(ValueError):
        SparseTensor((2, 2), {(0, 0): 0j})
    with pytest.raises(ValueError):
        SparseTensor((2, 2), {(2, 0): 1})
    ops = operator_set(2, RootOfUnity(5))
    payload = json.loads(ops.dump_json())
    assert payload["n"] == 2 and set(payload["tensors"]) >= {"R", "R_inv", "cap_emu", "cup_nmu"}
    assert ops.node_tensor("cross_neg") is ops.R_inv


def test_mixed_color_crossings_invert():
    q = RootOfUnity(9)
    for a, b in ((2, 3), (3, 2), (1, 4)):
        pos = crossing_tensor("cross_pos", a, b, q).matrix()
        neg = crossing_tensor("cross_neg", b, a, q).matrix()
        assert np.abs(pos @ neg - np.eye(a * b)).max() < 1e-10
