"""Toeplitz, Hankel and semi-commutator sections against brute-force oracles."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardybidisc.errors import WindowTooSmallError
from hardybidisc.hardyops import (
    NegWindow,
    OperatorMatrix,
    TruncationBox,
    commutator_matrix,
    dense_commutator,
    dense_oracle_semicommutator,
    hankel1,
    hankel_matrix,
    operator_norm,
    rank_estimate,
    semicommutator1,
    semicommutator_matrix,
    singular_values,
    singular_values_eig,
    tensor_commutator,
    tensor_semicommutator,
    toeplitz1,
    toeplitz_matrix,
    top_singular_values,
)
from hardybidisc.randsym import random_symbol1, random_symbol2
from hardybidisc.symbolcalc import Symbol2, make_tent, make_trigpoly, multiply, tensor

coef = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
poly2 = st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), coef,
                        min_size=1, max_size=6).map(make_trigpoly)


def _plain(f):
    """Same coefficients without the tensor descriptor (forces generic paths)."""
    return Symbol2.build(f.freqs, f.coefs, l2_tail=f.l2_tail, l1_tail=f.l1_tail)


def test_box_basis_is_lexicographic():
    box = TruncationBox(2, 1)
    assert box.basis().tolist() == [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0], [2, 1]]
    assert box.index(2, 1) == 5 and box.size == 6
    with pytest.raises(ValueError):
        TruncationBox(-1, 2)


@given(poly2)
@settings(max_examples=40)
def test_toeplitz_entries(f):
    box = TruncationBox(3, 2)
    T = toeplitz_matrix(f, box)
    B = box.basis()
    for i, a in enumerate(B):
        for j, c in enumerate(B):
            assert T.entries[i, j] == f.coeff((int(a[0] - c[0]), int(a[1] - c[1])))


def test_toeplitz_of_one_is_identity():
    T = toeplitz_matrix(make_trigpoly({(0, 0): 1.0}), TruncationBox(4, 3))
    assert np.array_equal(T.entries, np.eye(20))
    assert T.exactness == "exact"


def test_toeplitz_adjoint_is_conjugate_symbol():
    from hardybidisc.symbolcalc import conjugate
    f = random_symbol2(np.random.default_rng(1))
    box = TruncationBox(4, 4)
    assert np.allclose(toeplitz_matrix(conjugate(f), box).entries, toeplitz_matrix(f, box).adjoint().entries)


def test_hankel_entries_and_window():
    f = make_trigpoly({(-2, 1): 2.0, (1, 0): 1.0, (0, -1): 3j})
    box = TruncationBox(2, 2)
    H = hankel_matrix(f, box)
    rows = H.rows
    assert np.all((rows[:, 0] < 0) | (rows[:, 1] < 0))
    B = box.basis()
    for i, m in enumerate(rows):
        for j, c in enumerate(B):
            assert H.entries[i, j] == f.coeff((int(m[0] - c[0]), int(m[1] - c[1])))
    with pytest.raises(WindowTooSmallError):
        hankel_matrix(f, box, NegWindow(-1, 2, 0, 2))


def test_hankel_of_analytic_symbol_vanishes():
    f = make_trigpoly({(1, 2): 1.0, (0, 0): 4.0})
    assert hankel_matrix(f, TruncationBox(3, 3)).max_abs() == 0.0


@pytest.mark.parametrize("seed", range(6))
def test_semicommutator_routes_agree(seed):
    rng = np.random.default_rng(seed)
    f, g = random_symbol2(rng), random_symbol2(rng)
    box = TruncationBox(5, 4)
    S = semicommutator_matrix(f, g, box).entries
    for route in dense_oracle_semicommutator(f, g, box):
        assert np.max(np.abs(S - route.entries)) < 1e-12


def test_semicommutator_of_z1_pair():
    f, g = make_trigpoly({(1, 0): 1.0}), make_trigpoly({(-1, 0): 1.0})
    S = semicommutator_matrix(f, g, TruncationBox(3, 3)).entries
    # T_z1 T_conj(z1) - I kills exactly the monomials with a1 = 0
    expected = -np.diag([1.0 if a == 0 else 0.0 for a, _ in TruncationBox(3, 3).basis()])
    assert np.array_equal(S, expected)
    assert [rank_estimate(semicommutator_matrix(f, g, TruncationBox(n, n))) for n in (2, 3)] == [3, 4]


def test_semicommutator_zero_cases():
    f = make_trigpoly({(-1, 2): 1.0, (0, 1): 2.0})   # conj(f) analytic in z1
    g = make_trigpoly({(3, -1): 1.0, (1, 2): 1.0})   # g analytic in z1
    f2 = make_trigpoly({(-1, -2): 1.0})              # conj(f2) analytic in both
    box = TruncationBox(6, 6)
    assert semicommutator_matrix(f2, g, box).max_abs() == 0.0
    assert semicommutator_matrix(f, g, box).max_abs() > 0.0


@pytest.mark.parametrize("seed", range(4))
def test_tensor_paths_match_generic(seed):
    rng = np.random.default_rng(seed)
    f = tensor(random_symbol1(rng, 3), random_symbol1(rng, 3))
    g = tensor(random_symbol1(rng, 3), random_symbol1(rng, 3))
    box = TruncationBox(4, 5)
    S = tensor_semicommutator(f, g, box).to_dense()
    assert np.max(np.abs(S - semicommutator_matrix(_plain(f), _plain(g), box).entries)) < 1e-12
    C = tensor_commutator(f, g, box).to_dense()
    assert np.max(np.abs(C - dense_commutator(_plain(f), _plain(g), box).entries)) < 1e-12
    assert np.max(np.abs(C - commutator_matrix(_plain(f), _plain(g), box).entries)) < 1e-12


def test_kron_operator_matvec_adjoint():
    rng = np.random.default_rng(9)
    f = tensor(make_tent(0.2, 0.5, 8), make_tent(1.0, 0.7, 8))
    g = tensor(make_tent(3.0, 0.4, 8), make_tent(4.0, 0.6, 8))
    K = tensor_commutator(f, g, TruncationBox(5, 6))
    M = K.to_dense()
    x = rng.standard_normal(K.shape[1]) + 1j * rng.standard_normal(K.shape[1])
    y = rng.standard_normal(K.shape[0]) + 1j * rng.standard_normal(K.shape[0])
    assert np.allclose(K.matvec(x), M @ x)
    assert np.allclose(K.rmatvec(y), M.conj().T @ y)
    keep = np.arange(K.shape[0]) % 2 == 0
    L = K.masked(keep, ~keep)
    assert np.allclose(L.matvec(x), keep * (M @ (~keep * x)))


def test_one_variable_sections():
    f = random_symbol1(np.random.default_rng(2), 5)
    T = toeplitz1(f, 6).entries
    for a in range(7):
        for c in range(7):
            assert T[a, c] == f.coeff(a - c)
    H = hankel1(f, 6).entries
    assert H.shape == (max(0, -f.fmin), 7)
    g = random_symbol1(np.random.default_rng(3), 5)
    n = 6
    big = n + 5
    dense = toeplitz1(f, big, n).entries @ toeplitz1(g, n, big).entries - toeplitz1(multiply(f, g), n).entries
    assert np.max(np.abs(semicommutator1(f, g, n).entries - dense)) < 1e-12


def test_operator_matrix_arithmetic():
    B = TruncationBox(1, 1).basis()
    A = OperatorMatrix(np.eye(4, dtype=complex), B, B)
    C = OperatorMatrix(2 * np.eye(4, dtype=complex), B, B, exact=False, err=0.5)
    D = C - A
    assert D.max_abs() == 1.0 and D.err == 0.5 and D.exactness == "bounded-error"
    other = OperatorMatrix(np.eye(4, dtype=complex), B[::-1].copy(), B)
    with pytest.raises(ValueError):
        A - other


@pytest.mark.parametrize("seed", range(3))
def test_singular_value_routes(seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((12, 9)) + 1j * rng.standard_normal((12, 9))
    s = singular_values(M)
    assert np.allclose(s, singular_values_eig(M), atol=1e-10)
    assert np.all(np.diff(s) <= 0)
    assert operator_norm(M) == pytest.approx(np.linalg.norm(M, 2))


def test_arpack_matches_dense_for_large_kron():
    f = tensor(make_tent(0.2, 0.5, 16), make_tent(1.0, 0.7, 16))
    g = tensor(make_tent(3.0, 0.4, 16), make_tent(4.0, 0.6, 16))
    K = tensor_commutator(f, g, TruncationBox(44, 44))   # 2025 > dense limit
    top = top_singular_values(K, 5)
    ref = singular_values(K.to_dense())[:5]
    assert np.allclose(top, ref, rtol=1e-8, atol=1e-14)


def test_rank_of_zero_matrix():
    assert rank_estimate(np.zeros((3, 3))) == 0
    assert math.isclose(operator_norm(np.zeros((0, 0))), 0.0)
