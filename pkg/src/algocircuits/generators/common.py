"""Shared generator plumbing: result types, bitstring conventions, QFT blocks."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from ..circuit import Circuit, CircuitBuilder, Gate, Instruction
from ..errors import InvalidArgument


@dataclass
class AlgoMetadata:
    """Hidden generation data needed to check a circuit's output."""

    algorithm: str
    category: str
    params: dict[str, Any]
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"algorithm": self.algorithm, "category": self.category,
                "params": self.params, "data": self.data}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> AlgoMetadata:
        return cls(d["algorithm"], d["category"], dict(d.get("params", {})), dict(d.get("data", {})))


@dataclass
class GenResult:
    circuit: Circuit | None
    metadata: AlgoMetadata


def params_dict(params: Any) -> dict[str, Any]:
    out = {}
    for k, v in dataclasses.asdict(params).items():
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def make_result(builder: CircuitBuilder | None, algorithm: str, category: str,
                params: Any, **data: Any) -> GenResult:
    meta = AlgoMetadata(algorithm, category, params_dict(params), data)
    circuit = None
    if builder is not None:
        circuit = builder.build({"algorithm": algorithm, "category": category,
                                 "params": meta.params, "seed": getattr(params, "seed", None)})
    return GenResult(circuit, meta)


def rng_for(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


# Bitstrings are written with bit 0 as the rightmost character, matching
# histogram keys, so a secret "101" marks qubits 0 and 2.

def bit(s: str, i: int) -> int:
    return 1 if s[len(s) - 1 - i] == "1" else 0


def ones(s: str) -> list[int]:
    return [i for i in range(len(s)) if bit(s, i)]


def check_bitstring(s: str, n: int, what: str = "bitstring") -> str:
    if len(s) != n or any(ch not in "01" for ch in s):
        raise InvalidArgument(f"{what} must be {n} characters of 0/1, got {s!r}")
    return s


def random_bits(rng: np.random.Generator, n: int, nonzero: bool = False) -> str:
    while True:
        s = "".join("1" if b else "0" for b in rng.integers(0, 2, size=n))
        if not nonzero or "1" in s:
            return s


def to_bits(value: int, n: int) -> str:
    return format(value, f"0{n}b")


def check_size(n: int, minimum: int = 2, what: str = "problem_size") -> None:
    if not isinstance(n, (int, np.integer)) or n < minimum:
        raise InvalidArgument(f"{what} must be an integer >= {minimum}, got {n!r}")


def qft_instructions(qubits: Sequence[int], swaps: bool = True) -> list[Instruction]:
    """Textbook QFT on ``qubits`` (entry 0 least significant)."""
    n = len(qubits)
    out: list[Instruction] = []
    for j in reversed(range(n)):
        out.append(Instruction(Gate.H, (qubits[j],)))
        for k in reversed(range(j)):
            out.append(Instruction(Gate.CPHASE, (qubits[k], qubits[j]), (math.pi / 2 ** (j - k),)))
    if swaps:
        for i in range(n // 2):
            out.append(Instruction(Gate.SWAP, (qubits[i], qubits[n - 1 - i])))
    return out


def adjoint_instructions(instrs: Iterable[Instruction]) -> list[Instruction]:
    return [i.adjoint() for i in reversed(list(instrs))]


def iqft_instructions(qubits: Sequence[int], swaps: bool = True) -> list[Instruction]:
    return adjoint_instructions(qft_instructions(qubits, swaps))


def optimal_iterations(marked: int, space: int) -> int:
    """Grover iteration count maximising success: floor(pi / (4 asin(sqrt(M/N)))), at least 1."""
    if not 1 <= marked <= space:
        raise InvalidArgument(f"need 1 <= M <= N, got M={marked}, N={space}")
    angle = math.asin(math.sqrt(marked / space))
    return max(1, math.floor(math.pi / (4 * angle)))
