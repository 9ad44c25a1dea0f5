import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c5bench.dense import (
    DensityMatrix,
    KrausChannel,
    StateVector,
    apply_channel,
    apply_unitary,
    basis_state,
    bell_with_reference,
    cardinal_state,
    embed,
    fidelity_pure,
    partial_trace,
    random_density,
    random_kraus,
    random_unitary,
)
from c5bench.noise import depolarize_qubit

X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_identity_unitary_leaves_state():
    psi = basis_state([0, 1, 1])
    out = apply_unitary(psi, np.eye(2), [2])
    assert np.allclose(out.amplitudes, psi.amplitudes)


def test_bit_flip_on_qubit_two():
    out = apply_unitary(basis_state([0] * 5), X, [2])
    assert np.allclose(out.amplitudes, basis_state([0, 1, 0, 0, 0]).amplitudes)
    assert np.argmax(np.abs(out.amplitudes)) == 0b01000


def test_rejects_bad_inputs():
    psi = basis_state([0, 0])
    with pytest.raises(ValueError):
        apply_unitary(psi, np.array([[1, 1], [0, 1]]), [1])
    with pytest.raises(ValueError):
        apply_unitary(psi, X, [3])
    with pytest.raises(ValueError):
        apply_unitary(psi, np.eye(4), [1, 1])
    with pytest.raises(ValueError):
        StateVector(np.array([1, 1]))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(ValueError):
        KrausChannel((np.eye(2) * 0.5,))


def test_embed_matches_kron():
    u = np.arange(4).reshape(2, 2).astype(complex)
    assert np.allclose(embed(u, [2], 3), np.kron(np.kron(np.eye(2), u), np.eye(2)))


def test_depolarization_examples():
    rho = cardinal_state("+").density()
    full = apply_channel(rho, depolarize_qubit(1, 1.0).to_kraus())
    assert np.allclose(full.matrix, np.eye(2) / 2)
    assert np.allclose(apply_channel(rho, KrausChannel((np.eye(2),))).matrix, rho.matrix)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.37, 1.0])
def test_two_depolarizations_compose(p):
    rng = np.random.default_rng(3)
    rho = random_density(1, rng)
    ch = depolarize_qubit(1, p).to_kraus()
    twice = apply_channel(apply_channel(rho, ch), ch)
    once = apply_channel(rho, depolarize_qubit(1, p * (2 - p)).to_kraus())
    assert np.max(np.abs(twice.matrix - once.matrix)) < 1e-12
    assert np.max(np.abs(apply_channel(rho, ch.then(ch)).matrix - once.matrix)) < 1e-12


def test_partial_trace_examples():
    rng = np.random.default_rng(0)
    a, b = random_density(1, rng), random_density(2, rng)
    prod = DensityMatrix(np.kron(a.matrix, b.matrix))
    assert np.allclose(partial_trace(prod, [1]).matrix, a.matrix)
    assert np.allclose(partial_trace(prod, [2, 3]).matrix, b.matrix)
    bell = bell_with_reference(1, 1).density()
    assert np.allclose(partial_trace(bell, [2]).matrix, np.eye(2) / 2)
    with pytest.raises(ValueError):
        partial_trace(bell, [])


def test_partial_trace_keeps_order():
    rng = np.random.default_rng(1)
    a, b = random_density(1, rng), random_density(1, rng)
    rho = DensityMatrix(np.kron(a.matrix, b.matrix))
    assert np.allclose(partial_trace(rho, [2, 1]).matrix, np.kron(b.matrix, a.matrix))


def test_fidelity_pure_examples():
    psi = cardinal_state("+i")
    assert fidelity_pure(psi, psi.density()) == pytest.approx(1, abs=1e-12)
    assert fidelity_pure(psi, DensityMatrix.maximally_mixed(1)) == pytest.approx(0.5)
    for p in (0.0, 0.2, 0.9):
        out = apply_channel(cardinal_state("0").density(), depolarize_qubit(1, p).to_kraus())
        assert fidelity_pure(cardinal_state("0"), out) == pytest.approx(1 - p / 2, abs=1e-12)
    with pytest.raises(ValueError):
        fidelity_pure(psi, DensityMatrix.maximally_mixed(2))


@pytest.mark.parametrize("variant", ["phi+", "phi-", "psi+", "psi-"])
def test_bell_with_reference(variant):
    psi = bell_with_reference(5, 2, variant)
    assert psi.n == 6
    assert np.vdot(psi.amplitudes, psi.amplitudes).real == pytest.approx(1)
    rho = psi.density()
    assert np.allclose(partial_trace(rho, [6]).matrix, np.eye(2) / 2)
    assert np.allclose(partial_trace(rho, [2]).matrix, np.eye(2) / 2)
    # syndrome qubits sit in |1>
    assert partial_trace(rho, [1]).matrix[1, 1].real == pytest.approx(1)


def test_dump_is_plain_grid():
    text = DensityMatrix.maximally_mixed(1).dump(2)
    assert text.splitlines() == ["+0.50+0.00j +0.00+0.00j", "+0.00+0.00j +0.50+0.00j"]


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_channels_preserve_state_invariants(seed, rank):
    rng = np.random.default_rng(seed)
    rho = random_density(3, rng)
    ch = random_kraus(2, rank, rng)
    out = apply_channel(rho, ch, targets=[3, 1])  # DensityMatrix validates invariants
    assert np.trace(out.matrix).real == pytest.approx(1, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_unitary_then_inverse_restores(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(3, rng)
    u = random_unitary(4, rng)
    back = apply_unitary(apply_unitary(rho, u, [1, 3]), u.conj().T, [1, 3])
    assert np.max(np.abs(back.matrix - rho.matrix)) < 1e-10
    psi = StateVector(random_unitary(8, rng)[:, 0])
    back = apply_unitary(apply_unitary(psi, u, [2, 1]), u.conj().T, [2, 1])
    assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_partial_trace_commutes_with_local_channels(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(3, rng)
    ch = random_kraus(1, 2, rng)
    lhs = partial_trace(apply_channel(rho, ch, [2]), [2, 3])
    rhs = apply_channel(partial_trace(rho, [2, 3]), ch, [1])
    assert np.max(np.abs(lhs.matrix - rhs.matrix)) < 1e-10
    assert np.trace(partial_trace(rho, [1]).matrix).real == pytest.approx(1, abs=1e-12)
