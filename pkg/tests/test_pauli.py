import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from c5bench.code5 import standard_generators
from c5bench.pauli import (
    PauliString,
    all_paulis,
    commutes,
    enumerate_correctable_errors,
    multiply,
    to_matrix,
    weight,
    weight_at_most,
)

_DENSE = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


def dense(label):
    """Matrix of a letter string built directly from kron products."""
    m = np.array([[1.0 + 0j]])
    for c in label:
        m = np.kron(m, _DENSE[c])
    return m


@st.composite
def paulis(draw, n=5):
    return PauliString(n, draw(st.integers(0, 2**n - 1)), draw(st.integers(0, 2**n - 1)),
                       draw(st.integers(0, 3)))


def test_x_times_z_is_minus_i_y():
    x = PauliString.single(5, 3, "X")
    z = PauliString.single(5, 3, "Z")
    assert multiply(x, z) == PauliString.from_factors(5, {3: "Y"}, phase=3)


def test_identity_is_neutral():
    for p in enumerate_correctable_errors(5):
        assert PauliString.identity(5) * p == p
        assert p * PauliString.identity(5) == p


def test_g1_g3_product_matches_dense_oracle():
    g = standard_generators()
    # frozen from a 32x32 matrix product of the kron-built generators
    expected = PauliString.from_factors(5, {2: "X", 3: "X", 4: "X", 5: "Y"})
    assert g[0] * g[2] == expected
    assert np.allclose(dense("IZYYX") @ dense("IYZZZ"), dense("IXXXY"))


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        multiply(PauliString.identity(2), PauliString.identity(3))
    with pytest.raises(ValueError):
        commutes(PauliString.identity(2), PauliString.identity(3))


def test_commutation_examples():
    g = standard_generators()
    x1 = PauliString.single(5, 1, "X")
    assert commutes(PauliString.identity(5), g[0])
    assert not commutes(x1, g[1])
    m = dense("XIIII") @ dense("ZYYXI") + dense("ZYYXI") @ dense("XIIII")
    assert np.allclose(m, 0)
    for a, b in itertools.combinations(g, 2):
        assert commutes(a, b)


def test_weights():
    assert weight(PauliString.identity(5)) == 0
    assert [weight(g) for g in standard_generators()] == [4, 4, 4, 4]
    assert weight(PauliString.single(5, 1, "X") * PauliString.single(5, 3, "Y")) == 2


def test_to_matrix_examples():
    assert np.array_equal(to_matrix(PauliString.from_label("X")), [[0, 1], [1, 0]])
    assert np.allclose(np.diag(to_matrix(PauliString.from_label("ZZ"))), [1, -1, -1, 1])
    m = to_matrix(standard_generators()[3])
    assert m.shape == (32, 32)
    assert np.allclose(m @ m, np.eye(32))


def test_qubit_one_is_most_significant():
    m = to_matrix(PauliString.single(2, 1, "X"))
    assert np.allclose(m, np.kron(_DENSE["X"], np.eye(2)))


def test_correctable_error_enumeration():
    errs = enumerate_correctable_errors(5)
    assert len(errs) == 16
    assert len(enumerate_correctable_errors(1)) == 4
    assert all(weight(e) <= 1 for e in errs)
    assert [str(e) for e in errs[:4]] == ["+I", "+X1", "+Y1", "+Z1"]
    assert str(errs[-1]) == "+Z5"


def test_text_rendering():
    p = PauliString.from_factors(5, {1: "X", 2: "Z", 3: "X", 4: "Z"})
    assert str(p) == "+X1·Z2·X3·Z4"
    assert str(PauliString.identity(3)) == "+I"
    assert str(-PauliString.single(2, 2, "Y")) == "-Y2"
    assert PauliString.parse("-iY2", 2) == PauliString.from_factors(2, {2: "Y"}, phase=3)
    with pytest.raises(ValueError):
        PauliString.parse("X1", 5)
    with pytest.raises(ValueError):
        PauliString.parse("+X1·X1", 5)


def test_matrix_size_limit():
    with pytest.raises(ValueError):
        PauliString(9)


@given(paulis())
def test_text_roundtrip(p):
    assert PauliString.parse(str(p), p.n) == p


@given(paulis(), paulis(), paulis())
def test_multiplication_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(paulis())
def test_square_is_plus_minus_identity(a):
    sq = a * a
    assert sq.x == 0 and sq.z == 0
    assert sq.phase in (0, 2)


@given(paulis(n=3), paulis(n=3))
def test_matrix_homomorphism(a, b):
    assert np.max(np.abs(to_matrix(a * b) - to_matrix(a) @ to_matrix(b))) < 1e-12


@given(paulis())
def test_hermitian_when_phase_real(a):
    m = to_matrix(a)
    assert np.allclose(m.conj().T @ m, np.eye(32))
    if a.phase in (0, 2):
        assert np.allclose(m, m.conj().T)


def test_commutes_agrees_with_dense_commutator():
    ops = list(standard_generators()) + weight_at_most(5, 2)
    mats = {p: to_matrix(p) for p in ops}
    # the generators against everything, plus a deterministic slice of error pairs
    pairs = [(g, p) for g in standard_generators() for p in ops]
    pairs += list(itertools.combinations(ops[4:60], 2))
    for a, b in pairs:
        dense_commute = np.allclose(mats[a] @ mats[b], mats[b] @ mats[a])
        assert commutes(a, b) == dense_commute


def test_all_paulis_count():
    ps = all_paulis(2)
    assert len(ps) == 16 and len(set(ps)) == 16
