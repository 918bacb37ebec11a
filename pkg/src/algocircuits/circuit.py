"""Gate-level circuit IR.

A :class:`Circuit` is an immutable, ordered list of :class:`Instruction`
values over a flat qubit register and a flat classical register.  Qubit 0 is
the least significant bit everywhere in the package.

Generators build circuits through :class:`CircuitBuilder`, which validates
each instruction on insertion and freezes the result with :meth:`build`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Sequence

from .errors import InvalidArgument, InvalidInstruction, NotInvertible


class Gate(str, Enum):
    I = "I"
    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"
    S = "S"
    SDG = "SDG"
    T = "T"
    TDG = "TDG"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    PHASE = "PHASE"
    U3 = "U3"
    CX = "CX"
    CZ = "CZ"
    CPHASE = "CPHASE"
    RZZ = "RZZ"
    SWAP = "SWAP"
    MCX = "MCX"
    MCPHASE = "MCPHASE"
    MEASURE = "MEASURE"
    BARRIER = "BARRIER"

    @property
    def num_params(self) -> int:
        return _NUM_PARAMS.get(self, 0)

    @property
    def num_qubits(self) -> int | None:
        """Fixed operand count, or None for variable-arity gates."""
        return _NUM_QUBITS.get(self)


_NUM_PARAMS = {
    Gate.RX: 1, Gate.RY: 1, Gate.RZ: 1, Gate.PHASE: 1, Gate.RZZ: 1,
    Gate.CPHASE: 1, Gate.MCPHASE: 1, Gate.U3: 3,
}
_NUM_QUBITS = {g: 1 for g in (
    Gate.I, Gate.H, Gate.X, Gate.Y, Gate.Z, Gate.S, Gate.SDG, Gate.T, Gate.TDG,
    Gate.RX, Gate.RY, Gate.RZ, Gate.PHASE, Gate.U3, Gate.MEASURE,
)}
_NUM_QUBITS.update({g: 2 for g in (Gate.CX, Gate.CZ, Gate.CPHASE, Gate.RZZ, Gate.SWAP)})

SINGLE_QUBIT_GATES = frozenset(g for g, n in _NUM_QUBITS.items() if n == 1 and g is not Gate.MEASURE)
SELF_INVERSE = frozenset({
    Gate.I, Gate.H, Gate.X, Gate.Y, Gate.Z, Gate.CX, Gate.CZ, Gate.SWAP, Gate.MCX,
})
_ADJOINT_TAG = {Gate.S: Gate.SDG, Gate.SDG: Gate.S, Gate.T: Gate.TDG, Gate.TDG: Gate.T}
_NEGATED = frozenset({Gate.RX, Gate.RY, Gate.RZ, Gate.PHASE, Gate.RZZ, Gate.CPHASE, Gate.MCPHASE})


@dataclass(frozen=True, slots=True)
class Instruction:
    """One gate application.

    For MCX and MCPHASE the last qubit is the target and all preceding
    qubits are controls.
    """

    gate: Gate
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    clbits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        gate = self.gate
        if len(self.params) != gate.num_params:
            raise InvalidInstruction(
                f"{gate.value} takes {gate.num_params} angle(s), got {len(self.params)}")
        for p in self.params:
            if not math.isfinite(p):
                raise InvalidInstruction(f"{gate.value} angle {p!r} is not finite")
        nq = gate.num_qubits
        if nq is not None and len(self.qubits) != nq:
            raise InvalidInstruction(f"{gate.value} acts on {nq} qubit(s), got {len(self.qubits)}")
        if gate in (Gate.MCX, Gate.MCPHASE) and len(self.qubits) < 2:
            raise InvalidInstruction(f"{gate.value} needs at least one control and a target")
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidInstruction(f"duplicate qubit operand in {gate.value} {self.qubits}")
        if any(q < 0 for q in self.qubits) or any(c < 0 for c in self.clbits):
            raise InvalidInstruction("negative operand index")
        if gate is Gate.MEASURE:
            if len(self.clbits) != 1:
                raise InvalidInstruction("MEASURE needs exactly one clbit")
        elif self.clbits:
            raise InvalidInstruction(f"{gate.value} takes no clbits")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def adjoint(self) -> Instruction:
        gate = self.gate
        if gate is Gate.MEASURE:
            raise NotInvertible("MEASURE has no adjoint")
        if gate in SELF_INVERSE or gate is Gate.BARRIER:
            return self
        if gate in _ADJOINT_TAG:
            return Instruction(_ADJOINT_TAG[gate], self.qubits)
        if gate in _NEGATED:
            return Instruction(gate, self.qubits, (-self.params[0],))
        if gate is Gate.U3:
            theta, phi, lam = self.params
            return Instruction(gate, self.qubits, (-theta, -lam, -phi))
        raise NotInvertible(f"no adjoint rule for {gate.value}")  # pragma: no cover


def _check_against(instr: Instruction, num_qubits: int, num_clbits: int) -> None:
    for q in instr.qubits:
        if q >= num_qubits:
            raise InvalidInstruction(f"qubit {q} out of range for width {num_qubits}")
    for c in instr.clbits:
        if c >= num_clbits:
            raise InvalidInstruction(f"clbit {c} out of range for {num_clbits} clbits")


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    num_clbits: int = 0
    instructions: tuple[Instruction, ...] = ()
    metadata: dict[str, Any] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise InvalidArgument("a circuit needs at least one qubit")
        if self.num_clbits < 0:
            raise InvalidArgument("negative clbit count")
        for instr in self.instructions:
            _check_against(instr, self.num_qubits, self.num_clbits)

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    def count(self, gate: Gate) -> int:
        return sum(1 for i in self.instructions if i.gate is gate)

    def with_metadata(self, metadata: dict[str, Any] | None) -> Circuit:
        return _frozen(self.num_qubits, self.num_clbits, self.instructions, metadata)


def _frozen(num_qubits: int, num_clbits: int, instructions: tuple[Instruction, ...],
            metadata: dict[str, Any] | None = None) -> Circuit:
    # skips re-validation of instructions that were already checked
    c = object.__new__(Circuit)
    object.__setattr__(c, "num_qubits", num_qubits)
    object.__setattr__(c, "num_clbits", num_clbits)
    object.__setattr__(c, "instructions", instructions)
    object.__setattr__(c, "metadata", metadata)
    return c


def new_circuit(num_qubits: int, num_clbits: int = 0) -> Circuit:
    return Circuit(num_qubits, num_clbits)


def append(circuit: Circuit, instr: Instruction) -> Circuit:
    _check_against(instr, circuit.num_qubits, circuit.num_clbits)
    return _frozen(circuit.num_qubits, circuit.num_clbits,
                   circuit.instructions + (instr,), circuit.metadata)


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.num_qubits != b.num_qubits:
        raise InvalidArgument(f"width mismatch: {a.num_qubits} vs {b.num_qubits}")
    return _frozen(a.num_qubits, max(a.num_clbits, b.num_clbits),
                   a.instructions + b.instructions, a.metadata)


def inverse(circuit: Circuit) -> Circuit:
    """Reverse the instruction order and replace every gate by its adjoint.

    Barriers are kept (reversed in place); any MEASURE raises
    :class:`NotInvertible`.
    """
    instrs = tuple(i.adjoint() for i in reversed(circuit.instructions))
    return _frozen(circuit.num_qubits, circuit.num_clbits, instrs, circuit.metadata)


def depth(circuit: Circuit) -> int:
    qlevel = [0] * circuit.num_qubits
    clevel = [0] * circuit.num_clbits
    for instr in circuit.instructions:
        if instr.gate is Gate.BARRIER:
            if instr.qubits:
                m = max(qlevel[q] for q in instr.qubits)
                for q in instr.qubits:
                    qlevel[q] = m
            continue
        m = max(qlevel[q] for q in instr.qubits)
        for c in instr.clbits:
            m = max(m, clevel[c])
        m += 1
        for q in instr.qubits:
            qlevel[q] = m
        for c in instr.clbits:
            clevel[c] = m
    return max(qlevel + clevel, default=0)


def has_mid_circuit_measure(circuit: Circuit) -> bool:
    measured: set[int] = set()
    for instr in circuit.instructions:
        if instr.gate is Gate.MEASURE:
            measured.add(instr.qubits[0])
        elif instr.gate is not Gate.BARRIER and measured.intersection(instr.qubits):
            return True
    return False


@dataclass(frozen=True)
class GateCensus:
    width: int
    depth: int
    single_qubit_gates: int
    cnot_gates: int
    measure_gates: int
    has_mid_circuit_measure: bool
    other_multi_qubit_gates: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "width": self.width,
            "depth": self.depth,
            "single_qubit_gates": self.single_qubit_gates,
            "cnot_gates": self.cnot_gates,
            "measure_gates": self.measure_gates,
            "has_mid_circuit_measure": self.has_mid_circuit_measure,
        }


def census(circuit: Circuit) -> GateCensus:
    """Gate statistics of the basis-decomposed circuit."""
    from .decompose import decompose_to_basis

    basis = decompose_to_basis(circuit)
    single = cx = meas = other = 0
    for instr in basis.instructions:
        g = instr.gate
        if g in SINGLE_QUBIT_GATES:
            single += 1
        elif g is Gate.CX:
            cx += 1
        elif g is Gate.MEASURE:
            meas += 1
        elif g is not Gate.BARRIER:
            other += 1
    return GateCensus(
        width=basis.num_qubits,
        depth=depth(basis),
        single_qubit_gates=single,
        cnot_gates=cx,
        measure_gates=meas,
        has_mid_circuit_measure=has_mid_circuit_measure(basis),
        other_multi_qubit_gates=other,
    )


def remap(circuit: Circuit, qubit_map: Sequence[int], num_qubits: int,
          clbit_map: Sequence[int] | None = None, num_clbits: int = 0) -> Circuit:
    """Relabel a circuit's operands into a (usually larger) register."""
    out = []
    for instr in circuit.instructions:
        qubits = tuple(qubit_map[q] for q in instr.qubits)
        clbits = tuple(clbit_map[c] for c in instr.clbits) if instr.clbits else ()
        out.append(Instruction(instr.gate, qubits, instr.params, clbits))
    return Circuit(num_qubits, num_clbits, tuple(out))


class CircuitBuilder:
    """Mutable accumulator used by the generators.

    >>> b = CircuitBuilder(2, 2)
    >>> b.h(0).cx(0, 1).measure(0, 0).measure(1, 1)  # doctest: +ELLIPSIS
    <...CircuitBuilder...>
    >>> len(b.build())
    4
    """

    def __init__(self, num_qubits: int, num_clbits: int = 0):
        if num_qubits < 1:
            raise InvalidArgument("a circuit needs at least one qubit")
        self.num_qubits = num_qubits
        self.num_clbits = num_clbits
        self._instrs: list[Instruction] = []

    def __len__(self) -> int:
        return len(self._instrs)

    def add(self, gate: Gate, qubits: Iterable[int], params: Iterable[float] = (),
            clbits: Iterable[int] = ()) -> CircuitBuilder:
        instr = Instruction(gate, tuple(qubits), tuple(float(p) for p in params), tuple(clbits))
        _check_against(instr, self.num_qubits, self.num_clbits)
        self._instrs.append(instr)
        return self

    def append(self, instr: Instruction) -> CircuitBuilder:
        _check_against(instr, self.num_qubits, self.num_clbits)
        self._instrs.append(instr)
        return self

    def extend(self, instrs: Iterable[Instruction]) -> CircuitBuilder:
        for instr in instrs:
            self.append(instr)
        return self

    def h(self, q: int) -> CircuitBuilder:
        return self.add(Gate.H, (q,))

    def x(self, q: int) -> CircuitBuilder:
        return self.add(Gate.X, (q,))

    def z(self, q: int) -> CircuitBuilder:
        return self.add(Gate.Z, (q,))

    def rx(self, theta: float, q: int) -> CircuitBuilder:
        return self.add(Gate.RX, (q,), (theta,))

    def ry(self, theta: float, q: int) -> CircuitBuilder:
        return self.add(Gate.RY, (q,), (theta,))

    def rz(self, theta: float, q: int) -> CircuitBuilder:
        return self.add(Gate.RZ, (q,), (theta,))

    def p(self, lam: float, q: int) -> CircuitBuilder:
        return self.add(Gate.PHASE, (q,), (lam,))

    def u3(self, theta: float, phi: float, lam: float, q: int) -> CircuitBuilder:
        return self.add(Gate.U3, (q,), (theta, phi, lam))

    def cx(self, control: int, target: int) -> CircuitBuilder:
        return self.add(Gate.CX, (control, target))

    def cz(self, a: int, b: int) -> CircuitBuilder:
        return self.add(Gate.CZ, (a, b))

    def cp(self, lam: float, control: int, target: int) -> CircuitBuilder:
        return self.add(Gate.CPHASE, (control, target), (lam,))

    def rzz(self, theta: float, a: int, b: int) -> CircuitBuilder:
        return self.add(Gate.RZZ, (a, b), (theta,))

    def swap(self, a: int, b: int) -> CircuitBuilder:
        return self.add(Gate.SWAP, (a, b))

    def mcx(self, controls: Sequence[int], target: int) -> CircuitBuilder:
        if len(controls) == 1:
            return self.cx(controls[0], target)
        return self.add(Gate.MCX, (*controls, target))

    def mcp(self, lam: float, controls: Sequence[int], target: int) -> CircuitBuilder:
        if not controls:
            return self.p(lam, target)
        if len(controls) == 1:
            return self.cp(lam, controls[0], target)
        return self.add(Gate.MCPHASE, (*controls, target), (lam,))

    def measure(self, q: int, c: int) -> CircuitBuilder:
        return self.add(Gate.MEASURE, (q,), (), (c,))

    def barrier(self, *qubits: int) -> CircuitBuilder:
        return self.add(Gate.BARRIER, qubits or range(self.num_qubits))

    def build(self, metadata: dict[str, Any] | None = None) -> Circuit:
        return _frozen(self.num_qubits, self.num_clbits, tuple(self._instrs), metadata)
