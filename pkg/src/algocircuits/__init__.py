"""Parameterized quantum-algorithm circuit generators with a verifying simulator."""
from __future__ import annotations

__version__ = "0.1.0"

from .circuit import (Circuit, CircuitBuilder, Gate, GateCensus, Instruction, append, census,
                      compose, depth, inverse, new_circuit)
from .decompose import decompose_to_basis
from .generators import ALGORITHMS, generate
from .simulator import Histogram, StateVector, dense_unitary, run_statevector, sample_counts

__all__ = [
    "ALGORITHMS", "Circuit", "CircuitBuilder", "Gate", "GateCensus", "Histogram", "Instruction",
    "StateVector", "__version__", "append", "census", "compose", "decompose_to_basis",
    "dense_unitary", "depth", "generate", "inverse", "new_circuit", "run_statevector",
    "sample_counts",
]
