"""Lowering to the {single-qubit, CX} basis.

Multi-controlled gates use an ancilla-free controlled-root recursion::

    C^k P(l)[c1..ck; t] = CP(l/2)[ck; t]  C^{k-1}X[c1..c(k-1); ck]
                          CP(-l/2)[ck; t] C^{k-1}X[c1..c(k-1); ck]
                          C^{k-1}P(l/2)[c1..c(k-1); t]

and ``C^k X = H(t) C^k P(pi) H(t)`` for k >= 3.  Two-control MCX uses the
exact 6-CX Toffoli network.  Templates are cached per (gate, k) with angles
stored as affine functions of the gate angle, so expanding a circuit with
many multi-controlled gates stays linear in the output size.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .circuit import Circuit, Gate, Instruction, _frozen

# template entry: (gate, relative qubit positions, angle) where the angle is
# None or (coef, const), meaning coef * gate_angle + const
_Entry = tuple[Gate, tuple[int, ...], "tuple[float, float] | None"]

_BASIS = frozenset({
    Gate.I, Gate.H, Gate.X, Gate.Y, Gate.Z, Gate.S, Gate.SDG, Gate.T, Gate.TDG,
    Gate.RX, Gate.RY, Gate.RZ, Gate.PHASE, Gate.U3, Gate.CX, Gate.MEASURE, Gate.BARRIER,
})


def _cp(c: int, t: int, coef: float) -> list[_Entry]:
    return [
        (Gate.PHASE, (c,), (coef / 2, 0.0)),
        (Gate.CX, (c, t), None),
        (Gate.PHASE, (t,), (-coef / 2, 0.0)),
        (Gate.CX, (c, t), None),
        (Gate.PHASE, (t,), (coef / 2, 0.0)),
    ]


def _toffoli(c1: int, c2: int, t: int) -> list[_Entry]:
    return [
        (Gate.H, (t,), None),
        (Gate.CX, (c2, t), None),
        (Gate.TDG, (t,), None),
        (Gate.CX, (c1, t), None),
        (Gate.T, (t,), None),
        (Gate.CX, (c2, t), None),
        (Gate.TDG, (t,), None),
        (Gate.CX, (c1, t), None),
        (Gate.T, (c2,), None),
        (Gate.T, (t,), None),
        (Gate.H, (t,), None),
        (Gate.CX, (c1, c2), None),
        (Gate.T, (c1,), None),
        (Gate.TDG, (c2,), None),
        (Gate.CX, (c1, c2), None),
    ]


def _relabel(entries: list[_Entry], positions: tuple[int, ...], scale: float = 1.0) -> list[_Entry]:
    return [(g, tuple(positions[q] for q in qs), None if a is None else (a[0] * scale, a[1]))
            for g, qs, a in entries]


@lru_cache(maxsize=None)
def _mcp_template(k: int) -> tuple[_Entry, ...]:
    """C^k PHASE on positions 0..k (target k), angle coefficient 1."""
    if k == 1:
        return tuple(_cp(0, 1, 1.0))
    ck, t = k - 1, k
    rest = tuple(range(k - 1))
    mcx_rest = _relabel(list(_mcx_template(k - 1)), rest + (ck,))
    out = _cp(ck, t, 0.5) + mcx_rest + _cp(ck, t, -0.5) + mcx_rest
    out += _relabel(list(_mcp_template(k - 1)), rest + (t,), 0.5)
    return tuple(out)


@lru_cache(maxsize=None)
def _mcx_template(k: int) -> tuple[_Entry, ...]:
    """C^k X on positions 0..k (target k)."""
    if k == 1:
        return ((Gate.CX, (0, 1), None),)
    if k == 2:
        return tuple(_toffoli(0, 1, 2))
    # freeze the phase angle at pi so an enclosing template cannot rescale it
    body = [(g, qs, None if a is None else (0.0, a[0] * math.pi + a[1])) for g, qs, a in _mcp_template(k)]
    return ((Gate.H, (k,), None), *body, (Gate.H, (k,), None))


def _expand(template: tuple[_Entry, ...], qubits: tuple[int, ...], angle: float) -> list[Instruction]:
    out = []
    for g, qs, a in template:
        params = () if a is None else (a[0] * angle + a[1],)
        out.append(Instruction(g, tuple(qubits[q] for q in qs), params))
    return out


def decompose_instruction(instr: Instruction) -> list[Instruction]:
    g = instr.gate
    q = instr.qubits
    if g in _BASIS:
        return [instr]
    if g is Gate.CZ:
        a, b = q
        return [Instruction(Gate.H, (b,)), Instruction(Gate.CX, (a, b)), Instruction(Gate.H, (b,))]
    if g is Gate.SWAP:
        a, b = q
        return [Instruction(Gate.CX, (a, b)), Instruction(Gate.CX, (b, a)), Instruction(Gate.CX, (a, b))]
    if g is Gate.RZZ:
        a, b = q
        return [Instruction(Gate.CX, (a, b)), Instruction(Gate.RZ, (b,), instr.params),
                Instruction(Gate.CX, (a, b))]
    if g is Gate.CPHASE:
        return _expand(_mcp_template(1), q, instr.params[0])
    if g is Gate.MCPHASE:
        return _expand(_mcp_template(len(q) - 1), q, instr.params[0])
    if g is Gate.MCX:
        return _expand(_mcx_template(len(q) - 1), q, 0.0)
    raise AssertionError(f"no decomposition rule for {g}")  # pragma: no cover


def decompose_to_basis(circuit: Circuit) -> Circuit:
    """Return an equivalent circuit (up to global phase) over 1q gates, CX,
    MEASURE and BARRIER.  Basis-only circuits are returned unchanged."""
    if all(i.gate in _BASIS for i in circuit.instructions):
        return circuit
    out: list[Instruction] = []
    for instr in circuit.instructions:
        if instr.gate in _BASIS:
            out.append(instr)
        else:
            out.extend(decompose_instruction(instr))
    return _frozen(circuit.num_qubits, circuit.num_clbits, tuple(out), circuit.metadata)


_FIXED_COST = {Gate.CZ: 3, Gate.SWAP: 3, Gate.RZZ: 3}


def basis_size(instr: Instruction) -> int:
    """Number of basis instructions ``instr`` lowers to, without expanding it."""
    g = instr.gate
    if g in _BASIS:
        return 1
    if g in _FIXED_COST:
        return _FIXED_COST[g]
    if g is Gate.CPHASE:
        return 5
    k = len(instr.qubits) - 1
    return len(_mcp_template(k) if g is Gate.MCPHASE else _mcx_template(k))


def basis_gate_count(circuit: Circuit) -> int:
    sizes: dict[tuple[Gate, int], int] = {}
    total = 0
    for instr in circuit.instructions:
        key = (instr.gate, len(instr.qubits))
        n = sizes.get(key)
        if n is None:
            n = sizes[key] = basis_size(instr)
        total += n
    return total
