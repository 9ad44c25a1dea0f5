"""Pauli-mixture channels and the named error processes.

Depolarisation with probability ``p`` is ``rho -> (1 - p) rho + p I/2``,
realised as the identity with weight ``1 - 3p/4`` and each of X, Y, Z with
weight ``p/4``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dense import KrausChannel
from .pauli import PauliString, all_paulis, multiply, to_matrix

PROB_TOL = 1e-12


@dataclass(frozen=True)
class PauliChannel:
    """``rho -> sum_k p_k P_k rho P_k^dagger`` with phases dropped from ``P_k``."""

    n: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        merged: dict[PauliString, float] = defaultdict(float)
        for prob, p in self.terms:
            if p.n != self.n:
                raise ValueError(f"term {p} does not act on {self.n} qubits")
            if prob < -PROB_TOL:
                raise ValueError(f"negative probability {prob} for {p}")
            merged[p.unsigned()] += float(prob)
        total = sum(merged.values())
        if abs(total - 1) > PROB_TOL * max(1, len(merged)):
            raise ValueError(f"probabilities sum to {total}")
        terms = tuple(sorted(((max(v, 0.0), k) for k, v in merged.items() if v > 0), key=lambda t: t[1]))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def identity(cls, n: int) -> "PauliChannel":
        return cls(n, ((1.0, PauliString.identity(n)),))

    def probabilities(self) -> dict[PauliString, float]:
        return {p: prob for prob, p in self.terms}

    def probability(self, p: PauliString) -> float:
        return self.probabilities().get(p.unsigned(), 0.0)

    def then(self, other: "PauliChannel") -> "PauliChannel":
        """Composition: ``self`` first, then ``other`` (convolution over the Pauli group)."""
        if other.n != self.n:
            raise ValueError("channel size mismatch")
        acc: dict[PauliString, float] = defaultdict(float)
        for pa, a in self.terms:
            for pb, b in other.terms:
                acc[multiply(b, a).unsigned()] += pa * pb
        return PauliChannel(self.n, tuple((v, k) for k, v in acc.items()))

    def on_qubits(self, n: int, qubits) -> "PauliChannel":
        """Embed into an ``n``-qubit register, placing qubit ``k`` of this channel on ``qubits[k-1]``."""
        qubits = tuple(qubits)
        terms = []
        for prob, p in self.terms:
            factors = {qubits[k - 1]: p.letter(k) for k in p.support}
            terms.append((prob, PauliString.from_factors(n, factors)))
        return PauliChannel(n, tuple(terms))

    def to_vector(self) -> np.ndarray:
        """Probabilities indexed by ``(x << n) | z``."""
        vec = np.zeros(4**self.n)
        for prob, p in self.terms:
            vec[(p.x << self.n) | p.z] += prob
        return vec

    @classmethod
    def from_vector(cls, n: int, vec) -> "PauliChannel":
        mask = (1 << n) - 1
        return cls(n, tuple((float(v), PauliString(n, int(k) >> n, int(k) & mask))
                            for k, v in enumerate(vec) if v > 0))

    def to_kraus(self) -> KrausChannel:
        return KrausChannel(tuple(np.sqrt(prob) * to_matrix(p) for prob, p in self.terms))

    def entanglement_fidelity(self) -> float:
        return self.probability(PauliString.identity(self.n))

    def sample(self, shots: int, rng: np.random.Generator) -> "PauliChannel":
        """Empirical channel from ``shots`` independent draws (Monte Carlo mode)."""
        probs = np.array([t[0] for t in self.terms])
        counts = rng.multinomial(shots, probs / probs.sum())
        return PauliChannel(
            self.n, tuple((c / shots, t[1]) for c, t in zip(counts, self.terms) if c)
        )


def _check_prob(p: float) -> float:
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return float(p)


def depolarize_qubit(k: int, p: float, n: int = 1) -> PauliChannel:
    p = _check_prob(p)
    terms = [(1 - 3 * p / 4, PauliString.identity(n))]
    terms += [(p / 4, PauliString.single(n, k, c)) for c in "XYZ"]
    return PauliChannel(n, tuple(terms))


def independent_depolarizing(p: float, n: int) -> PauliChannel:
    """E1: every qubit depolarised independently with probability ``p``."""
    p = _check_prob(p)
    ch = PauliChannel.identity(n)
    for k in range(1, n + 1):
        ch = ch.then(depolarize_qubit(k, p, n))
    return ch


def random_single_qubit_depolarizing(n: int) -> PauliChannel:
    """E2: a uniformly random qubit is fully depolarised."""
    if n < 1:
        raise ValueError("need at least one qubit")
    acc: dict[PauliString, float] = defaultdict(float)
    for k in range(1, n + 1):
        for prob, p in depolarize_qubit(k, 1.0, n).terms:
            acc[p] += prob / n
    return PauliChannel(n, tuple((v, k) for k, v in acc.items()))


def pauli_injection(p: PauliString) -> PauliChannel:
    return PauliChannel(p.n, ((1.0, p),))


def implementation_noise(fe: float) -> PauliChannel:
    """One-qubit depolarisation whose entanglement fidelity is ``fe``."""
    if not 0.25 <= fe <= 1:
        raise ValueError(f"implementation fidelity {fe} outside [1/4, 1]")
    return depolarize_qubit(1, min(1.0, 4 * (1 - fe) / 3))


TIE_TOL = 1e-12


def demonic(
    n: int,
    evaluate: Callable[[PauliChannel], float],
    strengths=(1.0,),
    qubits=None,
) -> tuple[int, float, PauliChannel, float]:
    """E4: the one-qubit depolarisation minimising ``evaluate``.

    Returns ``(qubit, strength, channel, fidelity)``; values within
    ``TIE_TOL`` count as ties, which go to the first candidate in
    (qubit, strength) order.
    """
    best = None
    for k in qubits or range(1, n + 1):
        for t in strengths:
            ch = depolarize_qubit(k, t, n)
            f = evaluate(ch)
            if best is None or f < best[3] - TIE_TOL:
                best = (k, t, ch, f)
    return best


def strength_grid(points: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def pauli_twirl(ch: KrausChannel) -> PauliChannel:
    """Pauli channel obtained by averaging ``ch`` over conjugation by every Pauli.

    Its weights are the diagonal of the process matrix in the Pauli basis,
    ``p_Q = sum_K |tr(Q K)|^2 / d^2``.
    """
    d = 1 << ch.n
    terms = []
    for q in all_paulis(ch.n):
        qm = to_matrix(q)
        w = sum(abs(np.trace(qm.conj().T @ k)) ** 2 for k in ch.operators) / d**2
        terms.append((float(w), q))
    total = sum(w for w, _ in terms)
    return PauliChannel(ch.n, tuple((w / total, q) for w, q in terms))


def kraus_entanglement_fidelity(ch: KrausChannel) -> float:
    d = 1 << ch.n
    return float(sum(abs(np.trace(k)) ** 2 for k in ch.operators) / d**2)


# -- JSON channel specs --------------------------------------------------

def channel_from_spec(spec, n: int = 5) -> PauliChannel:
    """Build a Pauli channel on ``n`` qubits from a JSON-style spec.

    Kinds: ``none``, ``pauli`` (``label`` in text form), ``depolarize_qubit``
    (``qubit``, ``p``), ``independent_depolarizing`` (``p``),
    ``random_single_qubit``, ``compose`` (``channels`` list).  Any spec may carry
    ``shots`` and ``seed`` to replace the exact channel by a sampled one.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    kind = spec.get("kind", "none")
    if kind == "none":
        ch = PauliChannel.identity(n)
    elif kind == "pauli":
        ch = pauli_injection(PauliString.parse(spec["label"], n))
    elif kind == "depolarize_qubit":
        ch = depolarize_qubit(int(spec["qubit"]), float(spec["p"]), n)
    elif kind == "independent_depolarizing":
        ch = independent_depolarizing(float(spec["p"]), n)
    elif kind == "random_single_qubit":
        ch = random_single_qubit_depolarizing(n)
    elif kind == "compose":
        ch = PauliChannel.identity(n)
        for sub in spec["channels"]:
            ch = ch.then(channel_from_spec(sub, n))
    else:
        raise ValueError(f"unknown channel kind {kind!r}")
    if "shots" in spec:
        rng = np.random.default_rng(int(spec.get("seed", 0)))
        ch = ch.sample(int(spec["shots"]), rng)
    return ch
