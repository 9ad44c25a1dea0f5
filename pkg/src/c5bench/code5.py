"""The five-qubit code: generators, logical operators, encoder and correction table.

Qubit 2 carries the protected state; qubits 1, 3, 4, 5 are syndrome qubits that
start in |1>.  Syndrome bit ``i`` belongs to generator ``i`` and to syndrome
qubit ``SYNDROME_QUBITS[i]``.  After decoding, syndrome qubit ``q_i`` reads
``1 XOR s_i``, so the error-free outcome is |1111>.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .clifford import Gate, SynthesisError, Tableau, circuit_unitary, synthesize
from .pauli import (
    PauliString,
    all_paulis,
    commutes,
    enumerate_correctable_errors,
    multiply,
    to_matrix,
    weight,
)

N = 5
DATA_QUBIT = 2
SYNDROME_QUBITS = (1, 3, 4, 5)

Syndrome = tuple[int, int, int, int]


def standard_generators() -> tuple[PauliString, ...]:
    """The four commuting weight-4 generators, in their listed order."""
    return (
        PauliString.from_factors(N, {2: "Z", 3: "Y", 4: "Y", 5: "X"}),
        PauliString.from_factors(N, {1: "Z", 2: "Y", 3: "Y", 4: "X"}),
        PauliString.from_factors(N, {2: "Y", 3: "Z", 4: "Z", 5: "Z"}),
        PauliString.from_factors(N, {1: "X", 2: "Z", 3: "X", 4: "Z"}),
    )


def _letter_key(p: PauliString):
    return (weight(p), p.label().translate(str.maketrans("IXYZ", "0123")))


def _canonical_order(n: int) -> list[PauliString]:
    """All unsigned Paulis sorted by weight, then by label with I < X < Y < Z."""
    return sorted(all_paulis(n), key=_letter_key)


def _group_elements(gens) -> set[tuple[int, int]]:
    """Unsigned (x, z) masks of every product of a subset of ``gens``."""
    n = gens[0].n
    out = set()
    for bits in product((0, 1), repeat=len(gens)):
        p = PauliString.identity(n)
        for b, g in zip(bits, gens):
            if b:
                p = multiply(p, g)
        out.add((p.x, p.z))
    return out


def syndrome_bits(generators, error: PauliString) -> tuple[int, ...]:
    return tuple(0 if commutes(error, g) else 1 for g in generators)


def syndrome_index(s) -> int:
    """Integer value of a syndrome with bit 1 most significant."""
    idx = 0
    for b in s:
        idx = (idx << 1) | int(b)
    return idx


def _logical_operators(gens) -> tuple[PauliString, PauliString]:
    """Canonical logical pair: the first Z_L, then first X_L, in canonical order.

    Candidates are unsigned Paulis commuting with every generator and outside the
    stabilizer group; Z_L is the first such, X_L the first that anticommutes with Z_L.
    """
    stab = _group_elements(list(gens))
    normalizer = [
        p
        for p in _canonical_order(gens[0].n)
        if (p.x, p.z) not in stab and all(commutes(p, g) for g in gens)
    ]
    if not normalizer:
        raise SynthesisError("generators leave no logical operators")
    z_l = normalizer[0]
    x_l = next(p for p in normalizer if not commutes(p, z_l))
    return x_l, z_l


def _destabilizers(gens, x_l, z_l) -> tuple[PauliString, ...]:
    """First Paulis (canonical order) anticommuting with exactly one generator each,
    commuting with the logicals and with each other."""
    chosen: list[PauliString] = []
    order = _canonical_order(gens[0].n)
    for i in range(len(gens)):
        target = tuple(int(k == i) for k in range(len(gens)))
        for p in order:
            if (
                syndrome_bits(gens, p) == target
                and commutes(p, x_l)
                and commutes(p, z_l)
                and all(commutes(p, d) for d in chosen)
            ):
                chosen.append(p)
                break
        else:
            raise SynthesisError(f"no destabilizer for generator {i + 1} ({gens[i]})")
    return tuple(chosen)


@dataclass(frozen=True)
class StabilizerCode:
    """Five-qubit code in the joint ``signs`` eigenspace of ``generators``.

    The codespace is where ``signs[i] * generators[i]`` acts as +1.
    """

    generators: tuple[PauliString, ...] = field(default_factory=standard_generators)
    signs: tuple[int, ...] = (1, 1, 1, 1)
    data_qubit: int = DATA_QUBIT
    syndrome_qubits: tuple[int, ...] = SYNDROME_QUBITS

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(gens) != len(self.signs) or len(gens) != len(self.syndrome_qubits):
            raise ValueError("need one sign and one syndrome qubit per generator")
        roles = (self.data_qubit,) + tuple(self.syndrome_qubits)
        if len(set(roles)) != len(roles) or not all(1 <= q <= self.n for q in roles):
            raise ValueError("data and syndrome qubits must be distinct code qubits")

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def signed_generators(self) -> tuple[PauliString, ...]:
        return tuple(g if s > 0 else -g for g, s in zip(self.generators, self.signs))

    @cached_property
    def logicals(self) -> tuple[PauliString, PauliString]:
        return _logical_operators(self.generators)

    @property
    def logical_x(self) -> PauliString:
        return self.logicals[0]

    @property
    def logical_z(self) -> PauliString:
        return self.logicals[1]

    @cached_property
    def destabilizers(self) -> tuple[PauliString, ...]:
        return _destabilizers(self.generators, self.logical_x, self.logical_z)

    def syndrome_of(self, error: PauliString) -> Syndrome:
        """Bit ``i`` is 1 iff ``error`` anticommutes with generator ``i``."""
        if error.n != self.n:
            raise ValueError(f"error acts on {error.n} qubits, code has {self.n}")
        return syndrome_bits(self.generators, error)

    # -- encoder ------------------------------------------------------------
    @cached_property
    def encoder_tableau(self) -> Tableau:
        """Z_{q_i} -> -s_i g_i (so -Z_{q_i}, i.e. |1>, maps to s_i g_i),
        X_{q_i} -> destabilizer i, X_data -> X_L, Z_data -> Z_L."""
        for i, s in enumerate(self.signs):
            if s not in (1, -1):
                raise SynthesisError(
                    f"sign {s} for generator {i + 1} ({self.generators[i]}) is not +-1"
                )
        n = self.n
        if len(self.generators) != n - 1:
            raise SynthesisError(f"an encoder needs {n - 1} generators, got {len(self.generators)}")
        images_x: list[PauliString | None] = [None] * n
        images_z: list[PauliString | None] = [None] * n
        for i, q in enumerate(self.syndrome_qubits):
            images_z[q - 1] = -self.signed_generators[i]
            images_x[q - 1] = self.destabilizers[i]
        images_x[self.data_qubit - 1] = self.logical_x
        images_z[self.data_qubit - 1] = self.logical_z
        t = Tableau(tuple(images_x), tuple(images_z))
        try:
            t.validate()
        except SynthesisError as exc:
            for i, g in enumerate(self.generators):
                if not all(commutes(g, h) for h in self.generators):
                    raise SynthesisError(f"generator {i + 1} ({g}) does not commute: {exc}") from exc
            raise
        return t

    @cached_property
    def encoder_gates(self) -> tuple[Gate, ...]:
        return tuple(synthesize(self.encoder_tableau))

    @cached_property
    def decoder_gates(self) -> tuple[Gate, ...]:
        return tuple(g.inverse() for g in reversed(self.encoder_gates))

    @cached_property
    def decoder_tableau(self) -> Tableau:
        return Tableau.from_gates(self.decoder_gates, self.n)

    @cached_property
    def encoder(self) -> np.ndarray:
        u = circuit_unitary(self.encoder_gates, self.n)
        u.setflags(write=False)
        return u

    @cached_property
    def decoder(self) -> np.ndarray:
        u = self.encoder.conj().T.copy()
        u.setflags(write=False)
        return u

    def codespace_projector(self) -> np.ndarray:
        d = 1 << self.n
        proj = np.eye(d, dtype=complex)
        for g in self.signed_generators:
            proj = proj @ (np.eye(d) + to_matrix(g)) / 2
        return proj

    def input_projector(self) -> np.ndarray:
        """Projector onto data-arbitrary, syndrome qubits in |1>."""
        d = 1 << self.n
        proj = np.eye(d, dtype=complex)
        for q in self.syndrome_qubits:
            proj = proj @ (np.eye(d) - to_matrix(PauliString.single(self.n, q, "Z"))) / 2
        return proj

    # -- correction -------------------------------------------------------
    def decoded(self, p: PauliString) -> PauliString:
        """``U^dagger p U``: the Pauli seen after decoding."""
        return self.decoder_tableau.conjugate(p)

    @cached_property
    def correction_table(self) -> dict[Syndrome, str]:
        """Syndrome -> data-qubit correction letter, from decoding each correctable error."""
        table: dict[Syndrome, str] = {}
        for e in enumerate_correctable_errors(self.n):
            s = self.syndrome_of(e)
            if s in table:
                raise SynthesisError(f"errors share syndrome {s}; code is not distance 3")
            table[s] = self.decoded(e).letter(self.data_qubit)
        return table

    def correction_for(self, syndrome) -> PauliString:
        """One-qubit Pauli to apply to the data qubit for ``syndrome``."""
        return PauliString.single(1, 1, self.correction_table[tuple(syndrome)])

    def correction_unitary(self) -> np.ndarray:
        """Syndrome-controlled correction on all code qubits."""
        d = 1 << self.n
        u = np.zeros((d, d), dtype=complex)
        for s, letter in self.correction_table.items():
            bits = [0] * self.n
            for b, q in zip(s, self.syndrome_qubits):
                bits[q - 1] = 1 - b
            proj = np.eye(d, dtype=complex)
            for q in self.syndrome_qubits:
                z = to_matrix(PauliString.single(self.n, q, "Z"))
                sign = 1 if bits[q - 1] == 0 else -1
                proj = proj @ (np.eye(d) + sign * z) / 2
            u += proj @ to_matrix(PauliString.single(self.n, self.data_qubit, letter))
        return u

    def expected_logical_action(self, p: PauliString) -> PauliString:
        """sigma(P): residual one-qubit Pauli on the data after decode and correction."""
        if p.n != self.n:
            raise ValueError(f"Pauli acts on {p.n} qubits, code has {self.n}")
        d = self.decoded(p)
        s = self.syndrome_of(p)
        letter = d.letter(self.data_qubit)
        residual = multiply(self.correction_for(s), PauliString.single(1, 1, letter))
        return residual.unsigned()

    # -- text formats -----------------------------------------------------
    def to_text(self) -> str:
        syn = ",".join(map(str, self.syndrome_qubits))
        lines = [f"# n={self.n} data_qubit={self.data_qubit} syndrome_qubits={syn}"]
        lines += [f"{s:+d} {g}" for g, s in zip(self.generators, self.signs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "StabilizerCode":
        """Parse :meth:`to_text` output.

        The header line is optional: n defaults to 5, the data qubit to 2 and
        the syndrome qubits to the first remaining qubits, one per generator.
        """
        n, data, syn = N, DATA_QUBIT, None
        gens, signs = [], []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    if key == "n":
                        n = int(val)
                    elif key == "data_qubit":
                        data = int(val)
                    elif key == "syndrome_qubits":
                        syn = tuple(int(q) for q in val.split(","))
                continue
            sign, pauli = line.split(maxsplit=1)
            signs.append(int(sign))
            gens.append(PauliString.parse(pauli, n))
        if syn is None:
            syn = tuple(q for q in range(1, n + 1) if q != data)[: len(gens)]
        return cls(tuple(gens), tuple(signs), data, syn)

    def correction_table_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["syndrome", "correction"])
        for s in sorted(self.correction_table, key=syndrome_index):
            letter = self.correction_table[s]
            w.writerow(["".join(map(str, s)), "I" if letter == "I" else f"{letter}{self.data_qubit}"])
        return buf.getvalue()


def five_qubit_code(signs=(1, 1, 1, 1)) -> StabilizerCode:
    return StabilizerCode(standard_generators(), tuple(signs))


@dataclass
class DistanceReport:
    checked: int
    violations: list[PauliString]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_distance(code: StabilizerCode, max_weight: int = 2) -> DistanceReport:
    """Check that every Pauli of weight 1..max_weight anticommutes with some generator."""
    n = code.n
    checked = 0
    violations = []
    for w in range(1, max_weight + 1):
        for qubits in combinations(range(1, n + 1), w):
            for letters in product("XYZ", repeat=w):
                p = PauliString.from_factors(n, dict(zip(qubits, letters)))
                checked += 1
                if all(commutes(p, g) for g in code.generators):
                    violations.append(p)
    return DistanceReport(checked, violations)


@dataclass
class CodeCheck:
    generators_commute: bool
    generators_independent: bool
    distance: DistanceReport
    distinct_syndromes: bool

    @property
    def ok(self) -> bool:
        return (
            self.generators_commute
            and self.generators_independent
            and self.distance.ok
            and self.distinct_syndromes
        )


def check_code(code: StabilizerCode) -> CodeCheck:
    gens = code.generators
    commute_ok = all(commutes(a, b) for a, b in combinations(gens, 2))
    independent = len(_group_elements(list(gens))) == 1 << len(gens)
    syndromes = {code.syndrome_of(e) for e in enumerate_correctable_errors(code.n)}
    return CodeCheck(
        commute_ok,
        independent,
        verify_distance(code),
        len(syndromes) == 3 * code.n + 1,
    )
