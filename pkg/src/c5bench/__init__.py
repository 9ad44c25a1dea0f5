"""Exact simulation and benchmarking of the five-qubit error-correcting code."""

from .benchmark import (
    BenchmarkReport,
    encoded_curve,
    evaluate_goals,
    find_crossover,
    randomized_verification,
    run_error_grid,
    unencoded_curve,
)
from .code5 import StabilizerCode, five_qubit_code, standard_generators, verify_distance
from .noise import PauliChannel
from .pauli import PauliString
from .pipeline import Pipeline

__all__ = [
    "BenchmarkReport",
    "PauliChannel",
    "PauliString",
    "Pipeline",
    "StabilizerCode",
    "encoded_curve",
    "evaluate_goals",
    "find_crossover",
    "five_qubit_code",
    "randomized_verification",
    "run_error_grid",
    "standard_generators",
    "unencoded_curve",
    "verify_distance",
]
