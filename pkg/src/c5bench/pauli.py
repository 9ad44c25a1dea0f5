"""Phase-exact algebra of n-qubit Pauli products.

A :class:`PauliString` is ``i**phase * s_1 ⊗ ... ⊗ s_n`` where each ``s_k`` is one
of the Hermitian single-qubit Paulis I, X, Y, Z.  Qubit ``k`` (1-based) is stored
in bit ``k - 1`` of the ``x`` and ``z`` masks, and a qubit with both bits set is
Y, i.e. the operator ``i·X·Z``.  All phase bookkeeping follows from that rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_QUBITS = 8

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_TEXT_PHASE = {v: k for k, v in _PHASE_TEXT.items()}
_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTERS.items()}

_I2 = np.eye(2, dtype=complex)
_MATS = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_FACTOR_RE = re.compile(r"([IXYZ])(\d+)")


def _g(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent of i picked up when multiplying two single-qubit Paulis."""
    if x1 and z1:
        return z2 - x2
    if x1:
        return z2 * (2 * x2 - 1)
    if z1:
        return x2 * (1 - 2 * z2)
    return 0


@dataclass(frozen=True, order=True)
class PauliString:
    """An n-qubit Pauli product with phase ``i**phase``.

    Instances are immutable and hashable.  ``phase`` is an exponent in
    ``{0, 1, 2, 3}`` standing for ``{+1, +i, -1, -i}``.
    """

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("x/z masks do not fit in n bits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors ---------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """``letter`` ('I', 'X', 'Y' or 'Z') acting on 1-based ``qubit``."""
        if not 1 <= qubit <= n:
            raise ValueError(f"qubit {qubit} out of range 1..{n}")
        xb, zb = _BITS[letter.upper()]
        bit = 1 << (qubit - 1)
        return cls(n, bit * xb, bit * zb)

    @classmethod
    def from_factors(cls, n: int, factors: dict[int, str], phase: int = 0) -> "PauliString":
        x = z = 0
        for q, letter in factors.items():
            if not 1 <= q <= n:
                raise ValueError(f"qubit {q} out of range 1..{n}")
            xb, zb = _BITS[letter.upper()]
            x |= xb << (q - 1)
            z |= zb << (q - 1)
        return cls(n, x, z, phase)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Dense label such as ``"XZZXI"`` or ``"-iYIZ"``; first letter is qubit 1."""
        m = re.fullmatch(r"([+-]i?)?([IXYZ]+)", label.strip())
        if m is None:
            raise ValueError(f"bad Pauli label {label!r}")
        phase = _TEXT_PHASE[m.group(1) or "+"]
        letters = m.group(2)
        return cls.from_factors(len(letters), {k + 1: c for k, c in enumerate(letters)}, phase)

    @classmethod
    def parse(cls, text: str, n: int) -> "PauliString":
        """Inverse of :meth:`__str__`, e.g. ``parse("+X1·Z2·X3·Z4", 5)``."""
        text = text.strip()
        m = re.fullmatch(r"([+-]i?)(.*)", text)
        if m is None:
            raise ValueError(f"Pauli text must start with a sign: {text!r}")
        phase = _TEXT_PHASE[m.group(1)]
        body = m.group(2)
        if body == "I":
            return cls(n, phase=phase)
        factors: dict[int, str] = {}
        for chunk in re.split(r"[·*.]", body):
            fm = _FACTOR_RE.fullmatch(chunk)
            if fm is None:
                raise ValueError(f"bad Pauli factor {chunk!r} in {text!r}")
            q = int(fm.group(2))
            if q in factors:
                raise ValueError(f"qubit {q} repeated in {text!r}")
            factors[q] = fm.group(1)
        return cls.from_factors(n, factors, phase)

    # -- queries --------------------------------------------------------
    def letter(self, qubit: int) -> str:
        b = qubit - 1
        return _LETTERS[((self.x >> b) & 1, (self.z >> b) & 1)]

    @property
    def coefficient(self) -> complex:
        return 1j**self.phase

    @property
    def support(self) -> tuple[int, ...]:
        mask = self.x | self.z
        return tuple(q + 1 for q in range(self.n) if (mask >> q) & 1)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def unsigned(self) -> "PauliString":
        """Same Pauli letters with phase +1."""
        return PauliString(self.n, self.x, self.z)

    def label(self) -> str:
        """Dense letter string without phase, e.g. ``"IXZZX"``."""
        return "".join(self.letter(q) for q in range(1, self.n + 1))

    def restrict(self, qubits) -> "PauliString":
        """Letters on ``qubits`` (in the given order) as a smaller Pauli, phase dropped."""
        qubits = list(qubits)
        return PauliString.from_factors(
            len(qubits), {i + 1: self.letter(q) for i, q in enumerate(qubits)}
        )

    def __str__(self) -> str:
        body = "·".join(f"{self.letter(q)}{q}" for q in self.support) or "I"
        return _PHASE_TEXT[self.phase] + body

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.phase + 2)


def _check_sizes(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Operator product ``a·b`` with exact phase."""
    _check_sizes(a, b)
    e = a.phase + b.phase
    both = (a.x | a.z) & (b.x | b.z)
    for q in range(a.n):
        if (both >> q) & 1:
            e += _g((a.x >> q) & 1, (a.z >> q) & 1, (b.x >> q) & 1, (b.z >> q) & 1)
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, e)


def commutes(a: PauliString, b: PauliString) -> bool:
    """Symplectic inner product parity test."""
    _check_sizes(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def weight(p: PauliString) -> int:
    return (p.x | p.z).bit_count()


@lru_cache(maxsize=4096)
def to_matrix(p: PauliString) -> np.ndarray:
    """Dense ``2**n`` matrix; qubit 1 is the most significant tensor factor."""
    if p.n > MAX_QUBITS:
        raise ValueError("too many qubits for a dense matrix")
    m = np.array([[1.0 + 0j]])
    for q in range(1, p.n + 1):
        m = np.kron(m, _MATS[p.letter(q)])
    m = p.coefficient * m
    m.setflags(write=False)
    return m


def enumerate_correctable_errors(n: int) -> list[PauliString]:
    """Identity, then X, Y, Z on qubit 1, X, Y, Z on qubit 2, ... (length ``3n + 1``)."""
    out = [PauliString.identity(n)]
    for q in range(1, n + 1):
        out.extend(PauliString.single(n, q, c) for c in "XYZ")
    return out


def all_paulis(n: int) -> list[PauliString]:
    """All ``4**n`` unsigned Paulis, ordered by base-4 digit (I, X, Y, Z) with qubit 1 most significant."""
    return [pauli_from_index(n, k) for k in range(4**n)]


def pauli_from_index(n: int, index: int) -> PauliString:
    letters = []
    for _ in range(n):
        letters.append("IXYZ"[index % 4])
        index //= 4
    return PauliString.from_factors(n, {q + 1: c for q, c in enumerate(reversed(letters))})


def weight_at_most(n: int, w: int) -> list[PauliString]:
    return [p for p in all_paulis(n) if weight(p) <= w]
