"""Entanglement-fidelity estimators for one-qubit processes.

A *process* is any callable mapping a one-qubit :class:`DensityMatrix` to a
one-qubit :class:`DensityMatrix`.  Three estimators are provided and checked
against each other in the tests: six cardinal-state fidelities, the three
polarisation transfer coefficients, and the Bell-pair-with-reference overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dense import (
    CARDINAL_STATES,
    DensityMatrix,
    bell_with_reference,
    cardinal_state,
    fidelity_pure,
    partial_trace,
)
from .pauli import PauliString, to_matrix

Process = Callable[[DensityMatrix], DensityMatrix]

CLAMP_TOL = 1e-9
AXES = ("x", "y", "z")


@dataclass(frozen=True)
class FidelityEstimate:
    value: float
    method: str
    inputs_used: str

    def __post_init__(self):
        if self.method not in ("six-state", "transfer", "reference"):
            raise ValueError(f"unknown estimator {self.method!r}")
        v = self.value
        if v < -CLAMP_TOL or v > 1 + CLAMP_TOL:
            raise ValueError(f"fidelity {v} outside [0, 1]")
        object.__setattr__(self, "value", float(min(1.0, max(0.0, v))))

    def __float__(self) -> float:
        return self.value


def six_state_entanglement_fidelity(process: Process) -> FidelityEstimate:
    """``(F_0 + F_1 + F_+ + F_- + F_+i + F_-i)/4 - 1/2``."""
    total = 0.0
    for label in CARDINAL_STATES:
        psi = cardinal_state(label)
        total += fidelity_pure(psi, process(psi.density()))
    return FidelityEstimate(total / 4 - 0.5, "six-state", "|0>,|1>,|+>,|->,|+i>,|-i>")


def pauli_matrix(axis: str) -> np.ndarray:
    return to_matrix(PauliString.single(1, 1, axis.upper()))


def transfer_coefficient(process: Process, axis: str) -> float:
    """Preserved polarisation ``tr(s_u E(s_u)) / 2`` along ``axis``.

    ``E(s_u)`` is evaluated as ``E(rho_+u) - E(rho_-u)`` for the two axis eigenstates.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    s = pauli_matrix(axis)
    eye = np.eye(2)
    out = process(DensityMatrix((eye + s) / 2)).matrix - process(DensityMatrix((eye - s) / 2)).matrix
    return float(np.real(np.trace(s @ out)) / 2)


def transfer_entanglement_fidelity(px: float, py: float, pz: float) -> FidelityEstimate:
    for v in (px, py, pz):
        if not -1 - CLAMP_TOL <= v <= 1 + CLAMP_TOL:
            raise ValueError(f"polarisation {v} outside [-1, 1]")
    return FidelityEstimate((px + py + pz + 1) / 4, "transfer", f"P=({px:.6g},{py:.6g},{pz:.6g})")


def transfer_fidelity_of(process: Process) -> FidelityEstimate:
    return transfer_entanglement_fidelity(*(transfer_coefficient(process, u) for u in AXES))


def reference_entanglement_fidelity(
    pipeline: Callable[[DensityMatrix], DensityMatrix],
    n: int = 5,
    data_qubit: int = 2,
    variant: str = "phi+",
) -> FidelityEstimate:
    """Overlap of the (data, reference) state with the Bell state it started in.

    ``pipeline`` receives an ``n + 1``-qubit state and must act only on qubits
    ``1..n``; qubit ``n + 1`` is the untouched reference.  Non-data code qubits
    start in |1>.
    """
    psi = bell_with_reference(n, data_qubit, variant)
    out = pipeline(psi.density())
    reduced = partial_trace(out, (data_qubit, n + 1))
    pair = bell_with_reference(1, 1, variant)
    return FidelityEstimate(fidelity_pure(pair, reduced), "reference", f"bell={variant}")


def pauli_transfer_matrix(process: Process) -> np.ndarray:
    """4x4 real matrix ``R_ij = tr(s_i E(s_j)) / 2`` with ``s = (I, X, Y, Z)``."""
    basis = [np.eye(2, dtype=complex)] + [pauli_matrix(a) for a in AXES]
    eye = np.eye(2)
    images = [process(DensityMatrix(eye / 2)).matrix * 2]
    for s in basis[1:]:
        images.append(
            process(DensityMatrix((eye + s) / 2)).matrix - process(DensityMatrix((eye - s) / 2)).matrix
        )
    return np.array([[np.real(np.trace(a @ b)) / 2 for b in images] for a in basis])
