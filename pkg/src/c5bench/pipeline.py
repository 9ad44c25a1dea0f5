"""End-to-end storage pipeline: encode, evolve under noise, decode, correct.

Two engines evaluate the same pipeline.  The dense engine multiplies density
matrices by the synthesized encoder/decoder unitaries and the controlled
correction.  The Pauli engine pushes every Pauli term of the evolution noise
through the decoder tableau symbolically.  Because every element is Clifford
or a Pauli channel, both are exact and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .code5 import StabilizerCode
from .dense import (
    DensityMatrix,
    KrausChannel,
    apply_ops,
    embed_single,
    partial_trace_array,
)
from .fidelity import (
    AXES,
    FidelityEstimate,
    reference_entanglement_fidelity,
    six_state_entanglement_fidelity,
    transfer_coefficient,
)
from .noise import PauliChannel, implementation_noise
from .pauli import PauliString, commutes, to_matrix

ENGINES = ("dense", "pauli", "both")


class EngineMismatch(RuntimeError):
    pass


@lru_cache(maxsize=64)
def _pauli_stack(ch: PauliChannel, n_total: int, targets: tuple[int, ...]):
    """Weights, row permutations and row phases of each term's matrix:
    ``P[a, perm[a]] = v[a]``."""
    emb = ch.on_qubits(n_total, targets)
    probs, perms, phases = [], [], []
    rows = np.arange(1 << n_total)
    for prob, p in emb.terms:
        m = to_matrix(p)
        perm = np.argmax(np.abs(m), axis=1)
        probs.append(prob)
        perms.append(perm)
        phases.append(m[rows, perm])
    return np.array(probs), np.array(perms), np.array(phases)


def apply_pauli_channel(rho: np.ndarray, ch: PauliChannel, targets) -> np.ndarray:
    """``sum_k p_k P_k rho P_k^dagger`` with the channel placed on ``targets``.

    Uses the one-nonzero-per-row structure of Pauli matrices; linear in ``rho``.
    """
    n_total = rho.shape[0].bit_length() - 1
    probs, perms, v = _pauli_stack(ch, n_total, tuple(targets))
    out = np.zeros_like(rho)
    for lo in range(0, len(probs), 256):
        sl = slice(lo, lo + 256)
        pr, vv = perms[sl], v[sl]
        blocks = rho[pr[:, :, None], pr[:, None, :]] * vv[:, :, None] * vv.conj()[:, None, :]
        out += np.tensordot(probs[sl], blocks, axes=1)
    return out


@lru_cache(maxsize=16)
def residual_table(code: StabilizerCode) -> np.ndarray:
    """sigma(P) for every unsigned Pauli P, as 0..3 for I, X, Y, Z, indexed by ``(x << n) | z``."""
    n = code.n
    out = np.empty(4**n, dtype=np.int64)
    letters = "IXYZ"
    mask = (1 << n) - 1
    for k in range(4**n):
        r = code.expected_logical_action(PauliString(n, k >> n, k & mask))
        out[k] = letters.index(r.letter(1))
    return out


def _unencoded_table(n: int, data_qubit: int) -> np.ndarray:
    out = np.empty(4**n, dtype=np.int64)
    bit = 1 << (data_qubit - 1)
    for k in range(4**n):
        xb, zb = bool((k >> n) & bit), bool(k & bit)
        out[k] = "IXYZ".index({(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(xb, zb)])
    return out


def xor_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distribution of the product of independent Paulis drawn from ``a`` and ``b``."""
    out = np.zeros_like(b)
    idx = np.arange(b.size)
    for k in np.flatnonzero(a):
        out += a[k] * b[idx ^ k]
    return out


def axis_sign(r: PauliString, axis: str) -> int:
    """+1 if the one-qubit Pauli ``r`` preserves polarisation along ``axis``, else -1."""
    return 1 if commutes(r, PauliString.single(1, 1, axis.upper())) else -1


@dataclass(frozen=True, eq=False)
class Pipeline:
    """Storage of one qubit, optionally encoded in ``code``.

    ``noise`` is extra evolution noise applied after any injected error; a
    :class:`KrausChannel` noise acts on ``noise_targets`` (default all code
    qubits) and is only usable by the dense engine.  Implementation noise of
    entanglement fidelity ``fe`` hits the data qubit after correction.
    With ``code=None`` the qubit sits unencoded on ``data_qubit`` of ``n``.
    """

    code: StabilizerCode | None = None
    fe: float = 1.0
    noise: PauliChannel | KrausChannel | None = None
    noise_targets: tuple[int, ...] | None = None
    n: int = 5
    data_qubit: int = 2
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.code is not None:
            object.__setattr__(self, "n", self.code.n)
            object.__setattr__(self, "data_qubit", self.code.data_qubit)
        implementation_noise(self.fe)  # range check

    # -- dense engine -----------------------------------------------------
    def _dense_ops(self):
        if "ops" not in self._cache:
            code = self.code
            if code is None:
                self._cache["ops"] = None
            else:
                self._cache["ops"] = (code.encoder, code.decoder, code.correction_unitary())
        return self._cache["ops"]

    def _evolve(self, rho: np.ndarray, ch, targets) -> np.ndarray:
        if ch is None:
            return rho
        if isinstance(ch, PauliChannel):
            return apply_pauli_channel(rho, ch, targets)
        return apply_ops(ch.operators, rho, targets)

    def apply_dense(self, rho: np.ndarray, error=None) -> np.ndarray:
        """Run the pipeline on a raw matrix over ``n`` or more qubits (code qubits first)."""
        code_qubits = tuple(range(1, self.n + 1))
        ops = self._dense_ops()
        if ops is not None:
            rho = apply_ops(ops[0], rho, code_qubits)
        rho = self._evolve(rho, error, code_qubits)
        rho = self._evolve(rho, self.noise, self.noise_targets or code_qubits)
        if ops is not None:
            rho = apply_ops(ops[1], rho, code_qubits)
            rho = apply_ops(ops[2], rho, code_qubits)
        if self.fe < 1:
            rho = apply_pauli_channel(rho, implementation_noise(self.fe), (self.data_qubit,))
        return rho

    def process(self, error=None):
        """One-qubit process: data in on ``data_qubit`` (others |1>), data out."""

        def run(rho1: DensityMatrix) -> DensityMatrix:
            full = embed_single(rho1.matrix, self.n, self.data_qubit)
            out = self.apply_dense(full, error)
            return DensityMatrix(partial_trace_array(out, (self.data_qubit,)))

        return run

    def register(self, error=None):
        """Pipeline acting on the first ``n`` qubits of a larger register."""

        def run(rho: DensityMatrix) -> DensityMatrix:
            return DensityMatrix(self.apply_dense(rho.matrix, error))

        return run

    def dense_polarizations(self, error=None) -> tuple[float, float, float]:
        proc = self.process(error)
        return tuple(transfer_coefficient(proc, u) for u in AXES)

    def six_state_fidelity(self, error=None) -> FidelityEstimate:
        return six_state_entanglement_fidelity(self.process(error))

    def reference_fidelity(self, error=None, variant: str = "phi+") -> FidelityEstimate:
        return reference_entanglement_fidelity(self.register(error), self.n, self.data_qubit, variant)

    # -- Pauli engine -----------------------------------------------------
    def _noise_vector(self) -> np.ndarray:
        if "noise_vec" not in self._cache:
            if self.noise is None:
                vec = PauliChannel.identity(self.n).to_vector()
            elif isinstance(self.noise, PauliChannel):
                targets = self.noise_targets or tuple(range(1, self.n + 1))
                vec = self.noise.on_qubits(self.n, targets).to_vector()
            else:
                raise TypeError("the Pauli engine needs Pauli-channel noise")
            self._cache["noise_vec"] = vec
        return self._cache["noise_vec"]

    def _table(self) -> np.ndarray:
        if self.code is not None:
            return residual_table(self.code)
        if "table" not in self._cache:
            self._cache["table"] = _unencoded_table(self.n, self.data_qubit)
        return self._cache["table"]

    def logical_vector(self, error: PauliChannel | np.ndarray | None = None) -> np.ndarray:
        """Weights of I, X, Y, Z on the data qubit after the whole pipeline."""
        noise = self._noise_vector()
        if error is None:
            vec = noise
        else:
            ev = error if isinstance(error, np.ndarray) else error.to_vector()
            vec = xor_convolve(ev, noise)
        out = np.bincount(self._table(), weights=vec, minlength=4)
        if self.fe < 1:
            out = xor_convolve(implementation_noise(self.fe).to_vector()[[0, 2, 3, 1]], out)
        return out

    def logical_channel(self, error: PauliChannel | None = None) -> PauliChannel:
        """One-qubit Pauli channel seen by the data qubit."""
        w = self.logical_vector(error)
        return PauliChannel(
            1, tuple((float(v), PauliString.single(1, 1, c)) for v, c in zip(w, "IXYZ") if v > 0)
        )

    def pauli_polarizations(self, error: PauliChannel | None = None) -> tuple[float, float, float]:
        ch = self.logical_channel(error)
        return tuple(sum(prob * axis_sign(r, u) for prob, r in ch.terms) for u in AXES)

    def polarizations(self, error=None, engine: str = "dense", tol: float = 1e-9):
        if engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        if engine == "pauli":
            return self.pauli_polarizations(error)
        dense = self.dense_polarizations(error)
        if engine == "both":
            sym = self.pauli_polarizations(error)
            diff = max(abs(a - b) for a, b in zip(dense, sym))
            if diff > tol:
                raise EngineMismatch(f"dense and Pauli engines differ by {diff:.3g}")
        return dense



