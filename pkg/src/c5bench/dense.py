"""Exact state-vector and density-matrix simulation for a handful of qubits.

Basis convention: qubit 1 is the most significant bit of the computational
basis index, and |1> is the Z eigenvector with eigenvalue -1.  Qubit indices
are 1-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import MAX_QUBITS

TOL = 1e-10
PSD_FLOOR = -1e-9


def _num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
    return n


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "n", _num_qubits(amp.size))
        norm = np.vdot(amp, amp).real
        if abs(norm - 1) > TOL:
            raise ValueError(f"state vector norm^2 is {norm}, expected 1")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "n", _num_qubits(m.shape[0]))
        if np.max(np.abs(m - m.conj().T)) > TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1) > TOL:
            raise ValueError(f"density matrix trace is {tr}, expected 1")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if lo < PSD_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lo}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        d = 1 << n
        return cls(np.eye(d) / d)

    def dump(self, precision: int = 4) -> str:
        """Plain-text complex grid, one row per line."""
        fmt = f"{{:+.{precision}f}}{{:+.{precision}f}}j"
        return "\n".join(
            " ".join(fmt.format(v.real, v.imag) for v in row) for row in self.matrix
        )


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map ``rho -> sum_k K rho K^dagger`` on ``n`` qubits."""

    operators: tuple
    n: int = field(init=False)

    def __post_init__(self):
        ops = np.array([np.asarray(k, dtype=complex) for k in self.operators])
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise ValueError("Kraus operators must be square matrices of equal size")
        object.__setattr__(self, "n", _num_qubits(ops.shape[1]))
        completeness = np.einsum("kji,kjl->il", ops.conj(), ops)
        if np.max(np.abs(completeness - np.eye(ops.shape[1]))) > TOL:
            raise ValueError("Kraus operators are not trace preserving")
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @classmethod
    def unitary(cls, u: np.ndarray) -> "KrausChannel":
        return cls((u,))

    def then(self, other: "KrausChannel") -> "KrausChannel":
        """Sequential composition: ``self`` first, then ``other``."""
        if other.n != self.n:
            raise ValueError("channel size mismatch")
        return KrausChannel(tuple(b @ a for b in other.operators for a in self.operators))


def _check_targets(targets, n: int) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"repeated target qubits {targets}")
    for t in targets:
        if not 1 <= t <= n:
            raise ValueError(f"target qubit {t} out of range 1..{n}")
    return targets


def _left(ops: np.ndarray, mat: np.ndarray, targets: tuple[int, ...], n: int) -> np.ndarray:
    """Apply each operator in the batch ``ops`` (m, dt, dt) to the row index of ``mat`` on ``targets``.

    ``mat`` has shape (2**n, c); the result has shape (m, 2**n, c).
    """
    k = len(targets)
    cols = mat.shape[1]
    t = mat.reshape((2,) * n + (cols,))
    axes = [q - 1 for q in targets]
    t = np.moveaxis(t, axes, range(k)).reshape(1 << k, -1)
    out = ops @ t  # (m, dt, rest)
    out = out.reshape((ops.shape[0],) + (2,) * n + (cols,))
    out = np.moveaxis(out, range(1, k + 1), [a + 1 for a in axes])
    return out.reshape(ops.shape[0], 1 << n, cols)


def apply_ops(ops: np.ndarray, rho: np.ndarray, targets=None) -> np.ndarray:
    """``sum_k K rho K^dagger`` on raw arrays; ``rho`` need not be a state (linear use)."""
    ops = np.asarray(ops, dtype=complex)
    if ops.ndim == 2:
        ops = ops[None]
    n = _num_qubits(rho.shape[0])
    targets = tuple(range(1, n + 1)) if targets is None else _check_targets(targets, n)
    if ops.shape[1] != 1 << len(targets):
        raise ValueError(
            f"operator dimension {ops.shape[1]} does not match {len(targets)} target qubits"
        )
    if targets != tuple(range(1, n + 1)):
        ops = embed(ops, targets, n)
    a = ops @ rho
    return np.einsum("kij,klj->il", a, ops.conj(), optimize=True)


def embed(ops: np.ndarray, targets, n: int) -> np.ndarray:
    """Full ``2**n`` matrices of operators acting on ``targets`` (identity elsewhere)."""
    ops = np.asarray(ops, dtype=complex)
    single = ops.ndim == 2
    if single:
        ops = ops[None]
    targets = _check_targets(targets, n)
    full = _left(ops, np.eye(1 << n, dtype=complex), targets, n)
    return full[0] if single else full


def is_unitary(u: np.ndarray, tol: float = TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.max(
        np.abs(u.conj().T @ u - np.eye(u.shape[0]))
    ) <= tol


def apply_unitary(state, u: np.ndarray, targets=None):
    """Apply ``u`` on ``targets`` (default: all qubits) to a StateVector or DensityMatrix."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("matrix is not unitary")
    if isinstance(state, StateVector):
        n = state.n
        targets = tuple(range(1, n + 1)) if targets is None else _check_targets(targets, n)
        if u.shape[0] != 1 << len(targets):
            raise ValueError("unitary size does not match targets")
        amp = _left(u[None], state.amplitudes.reshape(-1, 1), targets, n)[0, :, 0]
        return StateVector(amp)
    if isinstance(state, DensityMatrix):
        return DensityMatrix(apply_ops(u, state.matrix, targets))
    raise TypeError(f"cannot apply a unitary to {type(state).__name__}")


def apply_channel(rho: DensityMatrix, ch: KrausChannel, targets=None) -> DensityMatrix:
    """``rho -> sum_K K rho K^dagger`` with the channel acting on ``targets``."""
    if targets is None and ch.n != rho.n:
        raise ValueError(f"channel on {ch.n} qubits applied to {rho.n}-qubit state")
    return DensityMatrix(apply_ops(ch.operators, rho.matrix, targets))


def partial_trace_array(m: np.ndarray, keep) -> np.ndarray:
    n = _num_qubits(m.shape[0])
    keep = _check_targets(keep, n)
    if not keep:
        raise ValueError("must keep at least one qubit")
    drop = [q for q in range(1, n + 1) if q not in keep]
    t = m.reshape((2,) * (2 * n))
    row = [q - 1 for q in keep] + [q - 1 for q in drop]
    col = [n + q - 1 for q in keep] + [n + q - 1 for q in drop]
    t = t.transpose(row + col)
    dk, dd = 1 << len(keep), 1 << len(drop)
    t = t.reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on ``keep`` (in the given order)."""
    return DensityMatrix(partial_trace_array(rho.matrix, keep))


def fidelity_pure(psi: StateVector, rho: DensityMatrix) -> float:
    """``<psi|rho|psi>``."""
    if psi.n != rho.n:
        raise ValueError("dimension mismatch")
    f = np.vdot(psi.amplitudes, rho.matrix @ psi.amplitudes)
    if abs(f.imag) > TOL:
        raise ValueError(f"fidelity has imaginary part {f.imag}")
    f = f.real
    if f < -TOL or f > 1 + TOL:
        raise ValueError(f"fidelity {f} outside [0, 1]")
    return float(min(1.0, max(0.0, f)))


CARDINAL_STATES = ("0", "1", "+", "-", "+i", "-i")

_CARDINAL = {
    "0": (1, 0),
    "1": (0, 1),
    "+": (1 / np.sqrt(2), 1 / np.sqrt(2)),
    "-": (1 / np.sqrt(2), -1 / np.sqrt(2)),
    "+i": (1 / np.sqrt(2), 1j / np.sqrt(2)),
    "-i": (1 / np.sqrt(2), -1j / np.sqrt(2)),
}


def cardinal_state(label: str) -> StateVector:
    """One of |0>, |1>, |+>, |->, |+i>, |-i>."""
    return StateVector(np.array(_CARDINAL[label], dtype=complex))


def basis_state(bits) -> StateVector:
    """Computational basis state; ``bits[0]`` is qubit 1."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    amp = np.zeros(1 << len(bits), dtype=complex)
    amp[idx] = 1
    return StateVector(amp)


def product_state(factors) -> StateVector:
    """Tensor product of single-qubit amplitude pairs, qubit 1 first."""
    amp = np.array([1.0 + 0j])
    for f in factors:
        amp = np.kron(amp, np.asarray(f, dtype=complex))
    return StateVector(amp)


BELL_VARIANTS = {
    "phi+": ((0, 0, 1), (1, 1, 1)),
    "phi-": ((0, 0, 1), (1, 1, -1)),
    "psi+": ((0, 1, 1), (1, 0, 1)),
    "psi-": ((0, 1, 1), (1, 0, -1)),
}


def bell_with_reference(n: int, data_qubit: int, variant: str = "phi+", fill: int = 1) -> StateVector:
    """Bell pair between ``data_qubit`` and an appended reference qubit ``n + 1``.

    The other ``n - 1`` qubits are in the basis state ``|fill>`` (default |1>,
    the syndrome-qubit initialisation).
    """
    if not 1 <= data_qubit <= n:
        raise ValueError(f"data qubit {data_qubit} out of range 1..{n}")
    amp = np.zeros(1 << (n + 1), dtype=complex)
    for d, r, sign in BELL_VARIANTS[variant]:
        bits = [fill] * n + [r]
        bits[data_qubit - 1] = d
        idx = int("".join(map(str, bits)), 2)
        amp[idx] = sign / np.sqrt(2)
    return StateVector(amp)


def embed_single(rho1: np.ndarray, n: int, qubit: int, fill: int = 1) -> np.ndarray:
    """Place a one-qubit operator on ``qubit`` with every other qubit in ``|fill><fill|``."""
    proj = np.zeros((2, 2), dtype=complex)
    proj[fill, fill] = 1
    m = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        m = np.kron(m, rho1 if q == qubit else proj)
    return m


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus(n: int, rank: int, rng: np.random.Generator) -> KrausChannel:
    """Random CPTP map from an isometry into ``rank`` environment levels."""
    d = 1 << n
    v = random_unitary(d * rank, rng)[:, :d]
    return KrausChannel(tuple(v[k * d : (k + 1) * d] for k in range(rank)))


def random_density(n: int, rng: np.random.Generator) -> DensityMatrix:
    d = 1 << n
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)
