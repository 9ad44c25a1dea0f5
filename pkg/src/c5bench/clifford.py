"""Clifford tableaux and gate-level synthesis.

A :class:`Tableau` records the images ``C X_j C^dagger`` and ``C Z_j C^dagger``
of a Clifford unitary ``C``.  :func:`synthesize` turns a tableau into a
time-ordered list of H, S, S^dagger, CNOT and Pauli gates whose product realises
it up to global phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .dense import embed
from .pauli import PauliString, commutes, multiply

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])
_GATE_MATRICES = {
    "H": _H,
    "S": _S,
    "SDG": _S.conj(),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}
_INVERSE = {"H": "H", "S": "SDG", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z", "CNOT": "CNOT"}

# images of (X, Z) under single-qubit gate conjugation, as (letter, sign)
_SINGLE_RULES = {
    "H": {"X": ("Z", 1), "Z": ("X", 1)},
    "S": {"X": ("Y", 1), "Z": ("Z", 1)},
    "SDG": {"X": ("Y", -1), "Z": ("Z", 1)},
    "X": {"X": ("X", 1), "Z": ("Z", -1)},
    "Y": {"X": ("X", -1), "Z": ("Z", -1)},
    "Z": {"X": ("X", -1), "Z": ("Z", 1)},
}


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def inverse(self) -> "Gate":
        return Gate(_INVERSE[self.name], self.qubits)

    def matrix(self) -> np.ndarray:
        return _GATE_MATRICES[self.name]

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.qubits))})"


def _signed(n: int, factors: dict[int, str], sign: int) -> PauliString:
    return PauliString.from_factors(n, factors, 0 if sign > 0 else 2)


def _gate_images(gate: Gate, n: int, qubit: int) -> tuple[PauliString, PauliString]:
    """Images of X_qubit and Z_qubit under conjugation by ``gate``."""
    ident = ({qubit: "X"}, {qubit: "Z"})
    if gate.name == "CNOT":
        c, t = gate.qubits
        if qubit == c:
            return _signed(n, {c: "X", t: "X"}, 1), _signed(n, {c: "Z"}, 1)
        if qubit == t:
            return _signed(n, {t: "X"}, 1), _signed(n, {c: "Z", t: "Z"}, 1)
    elif qubit == gate.qubits[0]:
        rule = _SINGLE_RULES[gate.name]
        (lx, sx), (lz, sz) = rule["X"], rule["Z"]
        return _signed(n, {qubit: lx}, sx), _signed(n, {qubit: lz}, sz)
    return _signed(n, ident[0], 1), _signed(n, ident[1], 1)


def conjugate(p: PauliString, images_x, images_z) -> PauliString:
    """Image of ``p`` under a Clifford given by the images of every X_j and Z_j.

    Uses ``Y_j = i X_j Z_j`` so that the result carries the exact phase.
    """
    out = PauliString(p.n, phase=p.phase)
    for q in range(1, p.n + 1):
        letter = p.letter(q)
        if letter == "X":
            out = multiply(out, images_x[q - 1])
        elif letter == "Z":
            out = multiply(out, images_z[q - 1])
        elif letter == "Y":
            xz = multiply(images_x[q - 1], images_z[q - 1])
            out = multiply(out, PauliString(p.n, xz.x, xz.z, xz.phase + 1))
    return out


def conjugate_by_gate(p: PauliString, gate: Gate) -> PauliString:
    """``G p G^dagger`` for a single gate."""
    touched = set(gate.qubits)
    if not touched & set(p.support):
        return p
    ix, iz = [], []
    for q in range(1, p.n + 1):
        if q in touched:
            gx, gz = _gate_images(gate, p.n, q)
        else:
            gx, gz = PauliString.single(p.n, q, "X"), PauliString.single(p.n, q, "Z")
        ix.append(gx)
        iz.append(gz)
    return conjugate(p, ix, iz)


@dataclass(frozen=True)
class Tableau:
    """Images of X_1..X_n and Z_1..Z_n under ``P -> C P C^dagger``."""

    images_x: tuple[PauliString, ...]
    images_z: tuple[PauliString, ...]

    @property
    def n(self) -> int:
        return len(self.images_x)

    @classmethod
    def identity(cls, n: int) -> "Tableau":
        return cls(
            tuple(PauliString.single(n, q, "X") for q in range(1, n + 1)),
            tuple(PauliString.single(n, q, "Z") for q in range(1, n + 1)),
        )

    @classmethod
    def from_gates(cls, gates, n: int) -> "Tableau":
        t = cls.identity(n)
        for g in gates:
            t = t.then(g)
        return t

    def then(self, gate: Gate) -> "Tableau":
        """Tableau of ``G C`` (gate applied after this Clifford)."""
        return Tableau(
            tuple(conjugate_by_gate(p, gate) for p in self.images_x),
            tuple(conjugate_by_gate(p, gate) for p in self.images_z),
        )

    def conjugate(self, p: PauliString) -> PauliString:
        return conjugate(p, self.images_x, self.images_z)

    def validate(self) -> None:
        """Raise :class:`SynthesisError` unless the images satisfy the Pauli relations."""
        n = self.n
        rows = [("X", j + 1, p) for j, p in enumerate(self.images_x)] + [
            ("Z", j + 1, p) for j, p in enumerate(self.images_z)
        ]
        for kind, j, p in rows:
            if p.n != n or not p.is_hermitian or p.x == p.z == 0:
                raise SynthesisError(f"image of {kind}{j} ({p}) is not a Hermitian non-identity Pauli")
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                ka, ja, pa = rows[a]
                kb, jb, pb = rows[b]
                should_anticommute = ja == jb and ka != kb
                if commutes(pa, pb) == should_anticommute:
                    raise SynthesisError(
                        f"images of {ka}{ja} ({pa}) and {kb}{jb} ({pb}) break the Pauli relations"
                    )


def _reduce_x(t: Tableau, j: int, gates: list[Gate]) -> Tableau:
    """Bring the image of X_j to +-X_j using gates on qubits >= j."""

    def push(g):
        nonlocal t
        gates.append(g)
        t = t.then(g)

    p = t.images_x[j - 1]
    for q in p.support:
        if p.letter(q) == "Z":
            push(Gate("H", (q,)))
        elif p.letter(q) == "Y":
            push(Gate("S", (q,)))
    support = t.images_x[j - 1].support
    if j not in support:
        push(Gate("CNOT", (support[0], j)))
    for q in t.images_x[j - 1].support:
        if q != j:
            push(Gate("CNOT", (j, q)))
    return t


def _reduce_z(t: Tableau, j: int, gates: list[Gate]) -> Tableau:
    """Bring the image of Z_j to +-Z_j while keeping X_j fixed."""

    def push(g):
        nonlocal t
        gates.append(g)
        t = t.then(g)

    def to_z(q):
        # Y -> Z with X fixed: H S H
        for name in ("H", "S", "H"):
            push(Gate(name, (q,)))

    q_img = t.images_z[j - 1]
    if q_img.letter(j) == "Y":
        to_z(j)
    for q in t.images_z[j - 1].support:
        if q == j:
            continue
        letter = t.images_z[j - 1].letter(q)
        if letter == "X":
            push(Gate("H", (q,)))
        elif letter == "Y":
            to_z(q)
        push(Gate("CNOT", (q, j)))
    return t


def synthesize(target: Tableau) -> list[Gate]:
    """Time-ordered gate list whose product has tableau ``target``.

    Gates are applied to the target until it becomes the identity tableau;
    the circuit is the reversed list of their inverses.
    """
    target.validate()
    t = target
    reducing: list[Gate] = []
    for j in range(1, t.n + 1):
        t = _reduce_x(t, j, reducing)
        t = _reduce_z(t, j, reducing)
        if t.images_x[j - 1].phase == 2:
            reducing.append(Gate("Z", (j,)))
            t = t.then(reducing[-1])
        if t.images_z[j - 1].phase == 2:
            reducing.append(Gate("X", (j,)))
            t = t.then(reducing[-1])
    if t != Tableau.identity(t.n):
        raise SynthesisError("reduction did not reach the identity tableau")
    circuit = [g.inverse() for g in reversed(reducing)]
    if Tableau.from_gates(circuit, target.n) != target:
        raise SynthesisError("synthesized circuit does not reproduce the target tableau")
    return circuit


def circuit_unitary(gates, n: int) -> np.ndarray:
    """Dense unitary of a time-ordered gate list (later gates multiply on the left)."""
    mats = [embed(g.matrix(), g.qubits, n) for g in gates]
    return reduce(lambda acc, m: m @ acc, mats, np.eye(1 << n, dtype=complex))
