import itertools

import numpy as np
import pytest

from c5bench.clifford import SynthesisError
from c5bench.code5 import (
    StabilizerCode,
    check_code,
    five_qubit_code,
    standard_generators,
    verify_distance,
)
from c5bench.dense import (
    CARDINAL_STATES,
    cardinal_state,
    embed_single,
    partial_trace_array,
)
from c5bench.pauli import (
    PauliString,
    all_paulis,
    commutes,
    enumerate_correctable_errors,
    multiply,
    to_matrix,
    weight,
)

CODE = five_qubit_code()


def syndrome_input(psi1):
    """Data state on qubit 2, syndrome qubits |1>."""
    one = np.array([0, 1], dtype=complex)
    v = np.array([1.0 + 0j])
    for q in range(1, 6):
        v = np.kron(v, psi1 if q == 2 else one)
    return v


def test_generators_as_listed():
    labels = [g.label() for g in standard_generators()]
    assert labels == ["IZYYX", "ZYYXI", "IYZZZ", "XZXZI"]


def test_generators_are_independent():
    gens = standard_generators()
    for r in range(1, 4):
        for subset in itertools.combinations(gens, r):
            prod = subset[0]
            for g in subset[1:]:
                prod = multiply(prod, g)
            assert (prod.x, prod.z) != (0, 0)
    assert check_code(CODE).generators_independent


def test_distance_check():
    report = verify_distance(CODE)
    assert report.checked == 105
    assert report.ok


def test_distance_check_catches_missing_generator():
    gens = standard_generators()[:3]
    report = verify_distance(StabilizerCode(gens, (1, 1, 1), 2, (1, 3, 4)))
    assert not report.ok
    # brute force: some weight <= 2 product commutes with the three survivors
    brute = [p for p in all_paulis(5) if 1 <= weight(p) <= 2 and all(commutes(p, g) for g in gens)]
    assert sorted(report.violations) == sorted(brute)


def test_syndromes():
    assert CODE.syndrome_of(PauliString.identity(5)) == (0, 0, 0, 0)
    assert CODE.syndrome_of(PauliString.single(5, 1, "X")) == (0, 1, 0, 0)
    syns = {CODE.syndrome_of(e) for e in enumerate_correctable_errors(5)}
    assert len(syns) == 16


def test_all_low_weight_products_have_nonzero_syndrome():
    for p in all_paulis(5):
        if 1 <= weight(p) <= 2:
            assert any(CODE.syndrome_of(p))


def test_logical_operators():
    xl, zl = CODE.logical_x, CODE.logical_z
    assert all(commutes(xl, g) and commutes(zl, g) for g in CODE.generators)
    assert not commutes(xl, zl)
    assert len(CODE.correction_table) == 16


def test_encoder_is_unitary_and_maps_projectors():
    u = CODE.encoder
    assert np.max(np.abs(u.conj().T @ u - np.eye(32))) < 1e-10
    code_proj = CODE.codespace_projector()
    assert np.trace(code_proj).real == pytest.approx(2)
    assert np.max(np.abs(u @ CODE.input_projector() @ u.conj().T - code_proj)) < 1e-10


def test_encoder_maps_stabilizers_and_logicals():
    u = CODE.encoder
    for i, q in enumerate(CODE.syndrome_qubits):
        minus_z = -to_matrix(PauliString.single(5, q, "Z"))
        assert np.allclose(u @ minus_z @ u.conj().T, to_matrix(CODE.signed_generators[i]))
    for letter, logical in (("X", CODE.logical_x), ("Z", CODE.logical_z)):
        m = to_matrix(PauliString.single(5, 2, letter))
        assert np.allclose(u @ m @ u.conj().T, to_matrix(logical))


@pytest.mark.parametrize("label", CARDINAL_STATES)
def test_encoded_states_lie_in_codespace(label):
    v = CODE.encoder @ syndrome_input(cardinal_state(label).amplitudes)
    assert np.max(np.abs(CODE.codespace_projector() @ v - v)) < 1e-10


def test_logical_basis_orthogonal():
    zero = CODE.encoder @ syndrome_input(np.array([1, 0], dtype=complex))
    one = CODE.encoder @ syndrome_input(np.array([0, 1], dtype=complex))
    assert abs(np.vdot(zero, one)) < 1e-12


def test_decoder_inverts_encoder():
    assert np.max(np.abs(CODE.decoder @ CODE.encoder - np.eye(32))) < 1e-10


def test_decode_after_x1_reveals_syndrome():
    v = CODE.decoder @ to_matrix(PauliString.single(5, 1, "X")) @ CODE.encoder @ syndrome_input(
        cardinal_state("0").amplitudes
    )
    rho = np.outer(v, v.conj())
    # syndrome (0,1,0,0): qubit 3 flips from |1> to |0>
    expected_bits = {1: 1, 3: 0, 4: 1, 5: 1}
    for q, b in expected_bits.items():
        assert partial_trace_array(rho, [q])[b, b].real == pytest.approx(1, abs=1e-10)


def test_decode_without_error_restores_input():
    v0 = syndrome_input(cardinal_state("+i").amplitudes)
    assert np.max(np.abs(CODE.decoder @ CODE.encoder @ v0 - v0)) < 1e-10


@pytest.mark.parametrize("error", enumerate_correctable_errors(5), ids=str)
def test_full_pipeline_corrects_each_error(error):
    chain = CODE.correction_unitary() @ CODE.decoder @ to_matrix(error) @ CODE.encoder
    for label in CARDINAL_STATES:
        psi = cardinal_state(label)
        full = embed_single(psi.density().matrix, 5, 2)
        out = partial_trace_array(chain @ full @ chain.conj().T, [2])
        f = np.vdot(psi.amplitudes, out @ psi.amplitudes).real
        assert abs(f - 1) < 1e-10


def test_identity_syndrome_needs_no_correction():
    assert CODE.correction_for((0, 0, 0, 0)) == PauliString.identity(1)


def sigma_dense(p):
    """Residual data-qubit Pauli from dense simulation, found by fidelity with each candidate."""
    chain = CODE.correction_unitary() @ CODE.decoder @ to_matrix(p) @ CODE.encoder
    best = None
    for letter in "IXYZ":
        s = to_matrix(PauliString.single(1, 1, letter))
        total = 0.0
        for label in CARDINAL_STATES:
            psi = cardinal_state(label)
            out = partial_trace_array(chain @ embed_single(psi.density().matrix, 5, 2) @ chain.conj().T, [2])
            out = s @ out @ s.conj().T
            total += np.vdot(psi.amplitudes, out @ psi.amplitudes).real
        if total > 6 - 1e-9:
            best = letter
    return best


def test_expected_logical_action_examples():
    assert CODE.expected_logical_action(PauliString.identity(5)).label() == "I"
    for g in CODE.signed_generators:
        assert CODE.expected_logical_action(g).label() == "I"
    p = multiply(CODE.logical_x, CODE.generators[0])
    assert CODE.expected_logical_action(p).label() == "X"
    assert sigma_dense(p) == "X"


def test_expected_logical_action_matches_dense_on_random_products():
    rng = np.random.default_rng(2024)
    ps = all_paulis(5)
    for k in rng.integers(0, len(ps), size=200):
        p = ps[k]
        assert CODE.expected_logical_action(p).label() == sigma_dense(p), str(p)


@pytest.mark.parametrize("signs", [(1, 1, 1, 1), (-1, 1, -1, 1), (-1, -1, -1, -1)])
def test_other_eigenspaces(signs):
    code = five_qubit_code(signs)
    u = code.encoder
    assert np.max(np.abs(u @ code.input_projector() @ u.conj().T - code.codespace_projector())) < 1e-10
    for e in enumerate_correctable_errors(5):
        assert code.expected_logical_action(e).label() == "I"


def test_bad_signs_reported_with_generator():
    with pytest.raises(SynthesisError, match="generator 2"):
        _ = StabilizerCode(standard_generators(), (1, 0, 1, 1)).encoder_tableau


def test_noncommuting_generators_reported():
    gens = list(standard_generators())
    gens[3] = PauliString.from_label("XIIII")
    with pytest.raises(SynthesisError):
        _ = StabilizerCode(tuple(gens)).encoder


def test_text_roundtrip():
    code = five_qubit_code((1, -1, 1, -1))
    text = code.to_text()
    assert "-1 +Z1·Y2·Y3·X4" in text
    again = StabilizerCode.from_text(text)
    assert again.generators == code.generators and again.signs == code.signs


def test_correction_table_csv():
    lines = CODE.correction_table_csv().splitlines()
    assert lines[0] == "syndrome,correction"
    assert len(lines) == 17
    assert lines[1] == "0000,I"
    rows = dict(line.split(",") for line in lines[1:])
    for e in enumerate_correctable_errors(5)[1:]:
        s = "".join(map(str, CODE.syndrome_of(e)))
        letter = CODE.decoded(e).letter(2)
        assert rows[s] == ("I" if letter == "I" else f"{letter}2")
