"""Reference computations written independently of the package.

Gate matrices, the full-register embedding and the classical answers
(Grover success curve, Simon nullspace, multiplicative order) are rebuilt
here from first principles so the tests do not check the package against
itself.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

SQ2 = 1 / math.sqrt(2)

_FIXED = {
    "I": np.eye(2),
    "H": np.array([[1, 1], [1, -1]]) * SQ2,
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "T": np.diag([1, np.exp(1j * math.pi / 4)]),
    "TDG": np.diag([1, np.exp(-1j * math.pi / 4)]),
}


def one_qubit(name: str, params=()) -> np.ndarray:
    if name in _FIXED:
        return np.asarray(_FIXED[name], dtype=complex)
    if name == "RX":
        (t,) = params
        return np.array([[math.cos(t / 2), -1j * math.sin(t / 2)],
                         [-1j * math.sin(t / 2), math.cos(t / 2)]])
    if name == "RY":
        (t,) = params
        return np.array([[math.cos(t / 2), -math.sin(t / 2)],
                         [math.sin(t / 2), math.cos(t / 2)]], dtype=complex)
    if name == "RZ":
        (t,) = params
        return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    if name == "PHASE":
        (t,) = params
        return np.diag([1, np.exp(1j * t)])
    if name == "U3":
        t, p, l = params
        return np.array([[math.cos(t / 2), -np.exp(1j * l) * math.sin(t / 2)],
                         [np.exp(1j * p) * math.sin(t / 2), np.exp(1j * (p + l)) * math.cos(t / 2)]])
    raise KeyError(name)


def _basis_map(n: int, fn) -> np.ndarray:
    """Matrix whose column b is fn(b) -> dict(row -> amplitude)."""
    dim = 2 ** n
    m = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        for row, amp in fn(b).items():
            m[row, b] += amp
    return m


def full_matrix(n: int, name: str, qubits, params=()) -> np.ndarray:
    """2^n x 2^n matrix of one gate, qubit 0 least significant."""
    qubits = list(qubits)
    if name in ("CX", "CZ", "CPHASE", "MCX", "MCPHASE"):
        *ctrl, tgt = qubits
        base = {"CX": "X", "MCX": "X", "CZ": "Z"}.get(name)
        u = one_qubit(base) if base else one_qubit("PHASE", params)
        return _controlled(n, ctrl, tgt, u)
    if name == "SWAP":
        a, b = qubits

        def fn(x):
            ba, bb = (x >> a) & 1, (x >> b) & 1
            y = x & ~((1 << a) | (1 << b)) | (bb << a) | (ba << b)
            return {y: 1.0}
        return _basis_map(n, fn)
    if name == "RZZ":
        a, b = qubits
        (t,) = params

        def fn(x):
            parity = ((x >> a) ^ (x >> b)) & 1
            return {x: np.exp(-0.5j * t) if parity == 0 else np.exp(0.5j * t)}
        return _basis_map(n, fn)
    (q,) = qubits
    return _controlled(n, [], q, one_qubit(name, params))


def _controlled(n: int, ctrl, tgt, u) -> np.ndarray:
    def fn(x):
        if not all((x >> c) & 1 for c in ctrl):
            return {x: 1.0}
        bit = (x >> tgt) & 1
        x0 = x & ~(1 << tgt)
        return {x0: u[0, bit], x0 | (1 << tgt): u[1, bit]}
    return _basis_map(n, fn)


def reference_unitary(circuit) -> np.ndarray:
    n = circuit.num_qubits
    m = np.eye(2 ** n, dtype=complex)
    for instr in circuit.instructions:
        name = instr.gate.value
        if name in ("BARRIER", "MEASURE"):
            continue
        m = full_matrix(n, name, instr.qubits, instr.params) @ m
    return m


def reference_state(circuit) -> np.ndarray:
    return reference_unitary(circuit)[:, 0]


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(b[idx]) < 1e-12:
        return False
    phase = a[idx] / b[idx]
    return np.max(np.abs(a - phase * b)) <= tol


def grover_success(marked: int, space: int, iterations: int) -> float:
    theta = math.asin(math.sqrt(marked / space))
    return math.sin((2 * iterations + 1) * theta) ** 2


def dot2(y: str, s: str) -> int:
    return sum(int(a) & int(b) for a, b in zip(y, s)) % 2


def simon_candidates(samples, n: int) -> list[str]:
    """Every nonzero s orthogonal to all samples, by enumeration."""
    out = []
    for bits in itertools.product("01", repeat=n):
        s = "".join(bits)
        if "1" in s and all(dot2(y, s) == 0 for y in samples):
            out.append(s)
    return out


def order(a: int, N: int) -> int:
    r = 1
    while pow(a, r, N) != 1:
        r += 1
    return r


def bits(value: int, n: int) -> str:
    return format(value, f"0{n}b")
