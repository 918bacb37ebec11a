"""Dense statevector simulation.

Amplitudes are indexed little-endian: bit ``q`` of the basis index is qubit
``q``.  Histogram keys are written in classical-bit order with clbit 0 as the
rightmost character.

Gates are applied in place on strided views of the amplitude buffer; MCX and
MCPHASE run natively rather than through their basis decomposition.
"""
from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .circuit import Circuit, Gate, Instruction, has_mid_circuit_measure
from .errors import InvalidArgument, RequiresTrajectory, ResourceLimit

DEFAULT_MAX_QUBITS = 26
DENSE_MAX_QUBITS = 6
SV_MAGIC = b"QGSV"
SV_VERSION = 1

_S2 = 1 / math.sqrt(2)
_FIXED_1Q = {
    Gate.I: np.eye(2, dtype=complex),
    Gate.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    Gate.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Gate.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Gate.Z: np.diag([1, -1]).astype(complex),
    Gate.S: np.diag([1, 1j]),
    Gate.SDG: np.diag([1, -1j]),
    Gate.T: np.diag([1, np.exp(1j * math.pi / 4)]),
    Gate.TDG: np.diag([1, np.exp(-1j * math.pi / 4)]),
}


def single_qubit_matrix(gate: Gate, params: tuple[float, ...] = ()) -> np.ndarray:
    if gate in _FIXED_1Q:
        return _FIXED_1Q[gate]
    if gate is Gate.RX:
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if gate is Gate.RY:
        c, s = math.cos(params[0] / 2), math.sin(params[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if gate is Gate.RZ:
        return np.diag([np.exp(-0.5j * params[0]), np.exp(0.5j * params[0])])
    if gate is Gate.PHASE:
        return np.diag([1, np.exp(1j * params[0])])
    if gate is Gate.U3:
        theta, phi, lam = params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ])
    raise InvalidArgument(f"{gate.value} is not a single-qubit gate")


def gate_matrix(instr: Instruction) -> np.ndarray:
    """Unitary of ``instr`` on its own operands, indexed little-endian:
    operand ``j`` is bit ``j`` of the local index."""
    g = instr.gate
    k = len(instr.qubits)
    if k == 1:
        return single_qubit_matrix(g, instr.params)
    dim = 1 << k
    if g is Gate.SWAP:
        m = np.zeros((4, 4), dtype=complex)
        for i, j in ((0, 0), (1, 2), (2, 1), (3, 3)):
            m[j, i] = 1
        return m
    if g is Gate.RZZ:
        th = instr.params[0]
        return np.diag([np.exp(-0.5j * th), np.exp(0.5j * th), np.exp(0.5j * th), np.exp(-0.5j * th)])
    all_ctrl = (1 << (k - 1)) - 1  # low k-1 bits are the controls
    tbit = 1 << (k - 1)
    if g in (Gate.CX, Gate.MCX):
        m = np.eye(dim, dtype=complex)
        a, b = all_ctrl, all_ctrl | tbit
        m[[a, b], :] = m[[b, a], :]
        return m
    if g is Gate.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if g in (Gate.CPHASE, Gate.MCPHASE):
        d = np.ones(dim, dtype=complex)
        d[dim - 1] = np.exp(1j * instr.params[0])
        return np.diag(d)
    raise InvalidArgument(f"no unitary for {g.value}")


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def probability(self, bits: str) -> float:
        """Probability of the full basis state written as a bitstring
        (qubit 0 rightmost)."""
        return float(abs(self.amplitudes[int(bits, 2)]) ** 2)

    def to_bytes(self) -> bytes:
        header = SV_MAGIC + struct.pack("<II", SV_VERSION, self.num_qubits)
        return header + np.ascontiguousarray(self.amplitudes, dtype="<c16").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> StateVector:
        if data[:4] != SV_MAGIC:
            raise InvalidArgument("not a statevector file")
        version, n = struct.unpack("<II", data[4:12])
        if version != SV_VERSION:
            raise InvalidArgument(f"unsupported statevector version {version}")
        amps = np.frombuffer(data[12:], dtype="<c16")
        if amps.size != 1 << n:
            raise InvalidArgument("statevector payload size does not match header")
        return cls(n, amps.astype(complex))

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | Path) -> StateVector:
        return cls.from_bytes(Path(path).read_bytes())


@dataclass
class Histogram:
    shots: int
    counts: dict[str, int] = field(default_factory=dict)

    def probability(self, key: str) -> float:
        return self.counts.get(key, 0) / self.shots

    def to_dict(self) -> dict:
        return {"shots": self.shots, "counts": dict(sorted(self.counts.items()))}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Histogram:
        counts = {str(k): int(v) for k, v in data["counts"].items()}
        shots = int(data["shots"])
        if sum(counts.values()) != shots:
            raise InvalidArgument("histogram counts do not sum to shots")
        return cls(shots, counts)


# --- in-place kernels -----------------------------------------------------

def _axis(n: int, q: int) -> int:
    return n - 1 - q


def _index(n: int, fixed: dict[int, int]) -> tuple:
    idx: list = [slice(None)] * n
    for q, v in fixed.items():
        idx[_axis(n, q)] = v
    return tuple(idx)


def apply_instruction(psi: np.ndarray, n: int, instr: Instruction) -> None:
    """Apply a unitary instruction to the flat amplitude array ``psi`` in place."""
    g = instr.gate
    qs = instr.qubits
    if g is Gate.BARRIER or g is Gate.I:
        return
    if len(qs) == 1:
        q = qs[0]
        view = psi.reshape(1 << (n - q - 1), 2, 1 << q)
        m = single_qubit_matrix(g, instr.params)
        if m[0, 1] == 0 and m[1, 0] == 0:
            if m[0, 0] != 1:
                view[:, 0, :] *= m[0, 0]
            view[:, 1, :] *= m[1, 1]
        else:
            a0 = view[:, 0, :].copy()
            a1 = view[:, 1, :]
            view[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
            view[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
        return
    t = psi.reshape((2,) * n)
    if g in (Gate.CX, Gate.MCX):
        ctrl = {c: 1 for c in qs[:-1]}
        i0 = _index(n, {**ctrl, qs[-1]: 0})
        i1 = _index(n, {**ctrl, qs[-1]: 1})
        tmp = t[i0].copy()
        t[i0] = t[i1]
        t[i1] = tmp
    elif g in (Gate.CPHASE, Gate.MCPHASE):
        t[_index(n, {q: 1 for q in qs})] *= np.exp(1j * instr.params[0])
    elif g is Gate.CZ:
        t[_index(n, {qs[0]: 1, qs[1]: 1})] *= -1
    elif g is Gate.SWAP:
        a, b = qs
        i0 = _index(n, {a: 0, b: 1})
        i1 = _index(n, {a: 1, b: 0})
        tmp = t[i0].copy()
        t[i0] = t[i1]
        t[i1] = tmp
    elif g is Gate.RZZ:
        a, b = qs
        same, diff = np.exp(-0.5j * instr.params[0]), np.exp(0.5j * instr.params[0])
        for va in (0, 1):
            for vb in (0, 1):
                t[_index(n, {a: va, b: vb})] *= same if va == vb else diff
    else:
        raise InvalidArgument(f"cannot apply {g.value}")


def _check_width(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise ResourceLimit(f"{n} qubits exceeds the simulation cap of {max_qubits}")


def run_statevector(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Final pure state from |0...0>; terminal measurements are ignored."""
    if has_mid_circuit_measure(circuit):
        raise RequiresTrajectory("circuit measures a qubit before acting on it again")
    n = circuit.num_qubits
    _check_width(n, max_qubits)
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    for instr in circuit.instructions:
        if instr.gate is not Gate.MEASURE:
            apply_instruction(psi, n, instr)
    return StateVector(n, psi)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """Ordered product of full-width gate embeddings (test oracle)."""
    n = circuit.num_qubits
    if n > DENSE_MAX_QUBITS:
        raise ResourceLimit(f"dense unitary limited to {DENSE_MAX_QUBITS} qubits")
    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    for instr in circuit.instructions:
        if instr.gate is Gate.BARRIER:
            continue
        if instr.gate is Gate.MEASURE:
            raise InvalidArgument("dense_unitary needs a measurement-free circuit")
        u = embed(gate_matrix(instr), instr.qubits, n) @ u
    return u


def embed(local: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    dim = 1 << n
    k = len(qubits)
    full = np.zeros((dim, dim), dtype=complex)
    mask = sum(1 << q for q in qubits)
    for col in range(dim):
        lc = sum(((col >> q) & 1) << j for j, q in enumerate(qubits))
        base = col & ~mask
        for lr in range(1 << k):
            amp = local[lr, lc]
            if amp != 0:
                row = base | sum(((lr >> j) & 1) << q for j, q in enumerate(qubits))
                full[row, col] = amp
    return full


# --- sampling ---------------------------------------------------------------

def _components(circuit: Circuit) -> list[list[int]]:
    """Qubit sets that no multi-qubit gate connects (barriers ignored)."""
    parent = list(range(circuit.num_qubits))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for instr in circuit.instructions:
        if instr.gate is Gate.BARRIER or len(instr.qubits) < 2:
            continue
        r = find(instr.qubits[0])
        for q in instr.qubits[1:]:
            parent[find(q)] = r
    groups: dict[int, list[int]] = {}
    for q in range(circuit.num_qubits):
        groups.setdefault(find(q), []).append(q)
    return sorted(groups.values())


def _subcircuit(circuit: Circuit, qubits: list[int]) -> Circuit:
    local = {q: i for i, q in enumerate(qubits)}
    instrs = []
    for instr in circuit.instructions:
        if not any(q in local for q in instr.qubits):
            continue
        if instr.gate is Gate.BARRIER:
            qs = tuple(local[q] for q in instr.qubits if q in local)
            instrs.append(Instruction(Gate.BARRIER, qs))
            continue
        instrs.append(Instruction(instr.gate, tuple(local[q] for q in instr.qubits),
                                  instr.params, instr.clbits))
    return Circuit(len(qubits), circuit.num_clbits, tuple(instrs))


def _shot_uniforms(seed: int, stream: int, shots: int, per_shot: int) -> np.ndarray:
    # row i is shot i's stream; identical regardless of how shots are batched
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.default_rng(ss).random((shots, per_shot))


def _terminal_outcomes(sub: Circuit, shots: int, seed: int, stream: int,
                       max_qubits: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Sample measured-qubit outcomes; returns (shots x measured) bits and
    the (local qubit, clbit) measurement list."""
    measures = [(i.qubits[0], i.clbits[0]) for i in sub.instructions if i.gate is Gate.MEASURE]
    if not measures:
        return np.zeros((shots, 0), dtype=np.int64), []
    sv = run_statevector(sub, max_qubits)
    n = sub.num_qubits
    mq = sorted({q for q, _ in measures})
    probs = sv.probabilities().reshape((2,) * n)
    keep = [_axis(n, q) for q in mq]
    drop = tuple(a for a in range(n) if a not in keep)
    marg = probs.sum(axis=drop) if drop else probs
    # remaining axes are ordered by axis index, i.e. descending qubit order
    marg = marg.reshape(-1)
    cdf = np.cumsum(marg)
    cdf /= cdf[-1]
    u = _shot_uniforms(seed, stream, shots, 1)[:, 0]
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
    mq_desc = sorted(mq, reverse=True)
    bits = np.zeros((shots, n), dtype=np.int64)
    for pos, q in enumerate(mq_desc):
        bits[:, q] = (idx >> (len(mq_desc) - 1 - pos)) & 1
    return bits, measures


def _trajectory_outcomes(sub: Circuit, shots: int, seed: int, stream: int,
                         max_qubits: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Per-shot trajectories: each measurement is sampled from the shot's own
    uniform stream, the state collapses and evolution continues.  States are
    cached by measurement-outcome prefix so shots sharing a branch share work."""
    n = sub.num_qubits
    _check_width(n, max_qubits)
    instrs = sub.instructions
    meas_pos = [k for k, i in enumerate(instrs) if i.gate is Gate.MEASURE]
    measures = [(instrs[k].qubits[0], instrs[k].clbits[0]) for k in meas_pos]
    u = _shot_uniforms(seed, stream, shots, max(len(meas_pos), 1))

    def evolve(psi: np.ndarray, start: int, stop: int) -> np.ndarray:
        for instr in instrs[start:stop]:
            apply_instruction(psi, n, instr)
        return psi

    psi0 = np.zeros(1 << n, dtype=complex)
    psi0[0] = 1.0
    first = meas_pos[0] if meas_pos else len(instrs)
    cache: dict[tuple[int, ...], tuple[np.ndarray, float]] = {}
    budget = 1 << 24  # cached amplitudes

    def node(prefix: tuple[int, ...]) -> tuple[np.ndarray, float]:
        """State just before measurement len(prefix), and P(outcome 1)."""
        hit = cache.get(prefix)
        if hit is not None:
            return hit
        if not prefix:
            psi = evolve(psi0.copy(), 0, first)
        else:
            parent, _ = node(prefix[:-1])
            k = len(prefix) - 1
            q = measures[k][0]
            psi = parent.copy()
            view = psi.reshape(1 << (n - q - 1), 2, 1 << q)
            view[:, 1 - prefix[-1], :] = 0
            norm = np.linalg.norm(psi)
            if norm > 0:
                psi /= norm
            stop = meas_pos[k + 1] if k + 1 < len(meas_pos) else len(instrs)
            psi = evolve(psi, meas_pos[k] + 1, stop)
        if len(prefix) < len(meas_pos):
            q = measures[len(prefix)][0]
            view = psi.reshape(1 << (n - q - 1), 2, 1 << q)
            p1 = float(np.sum(np.abs(view[:, 1, :]) ** 2))
        else:
            p1 = 0.0
        result = (psi, p1)
        if len(cache) * (1 << n) < budget:
            cache[prefix] = result
        return result

    bits = np.zeros((shots, n), dtype=np.int64)
    out = np.zeros((shots, len(meas_pos)), dtype=np.int64)
    for s in range(shots):
        prefix: tuple[int, ...] = ()
        for k in range(len(meas_pos)):
            _, p1 = node(prefix)
            o = 1 if u[s, k] < p1 else 0
            prefix += (o,)
        out[s] = prefix
    return out, measures


def sample_counts(circuit: Circuit, shots: int, seed: int = 0,
                  max_qubits: int = DEFAULT_MAX_QUBITS) -> Histogram:
    """Sample measurement outcomes.

    Qubit groups that never interact are simulated separately, so wide
    circuits made of small disjoint blocks (key distribution, parallel
    teleportation) stay cheap.  Groups containing a mid-circuit measurement
    run as per-shot trajectories; the rest sample the final marginal.
    """
    if shots < 1:
        raise InvalidArgument("shots must be at least 1")
    nc = circuit.num_clbits
    clbits = np.zeros((shots, nc), dtype=np.int64)
    for stream, qubits in enumerate(_components(circuit)):
        sub = _subcircuit(circuit, qubits)
        if not any(i.gate is Gate.MEASURE for i in sub.instructions):
            continue
        if has_mid_circuit_measure(sub):
            outcomes, measures = _trajectory_outcomes(sub, shots, seed, stream, max_qubits)
            for k, (_, c) in enumerate(measures):
                clbits[:, c] = outcomes[:, k]
        else:
            bits, measures = _terminal_outcomes(sub, shots, seed, stream, max_qubits)
            for q, c in measures:
                clbits[:, c] = bits[:, q]
    counts: dict[str, int] = {}
    if nc == 0:
        return Histogram(shots, {"": shots})
    rows, freq = np.unique(clbits[:, ::-1], axis=0, return_counts=True)
    for row, f in zip(rows, freq):
        counts["".join("1" if b else "0" for b in row)] = int(f)
    return Histogram(shots, counts)


def outcome_distribution(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> dict[str, float]:
    """Exact clbit-key distribution of a circuit whose measurements are all
    terminal (each qubit measured at most once into a distinct clbit)."""
    sv = run_statevector(circuit, max_qubits)
    measures = [(i.qubits[0], i.clbits[0]) for i in circuit.instructions if i.gate is Gate.MEASURE]
    nc = circuit.num_clbits
    probs = sv.probabilities()
    index = np.arange(probs.size, dtype=np.int64)
    keys = np.zeros(probs.size, dtype=np.int64)
    for q, c in measures:
        keys &= ~np.int64(1 << c)
        keys |= ((index >> q) & 1) << c
    uniq, inv = np.unique(keys, return_inverse=True)
    mass = np.bincount(inv, weights=probs)
    return {format(int(k), f"0{nc}b") if nc else "": float(m)
            for k, m in zip(uniq, mass) if m > 1e-15}
