"""Amplitude-amplification generators: Grover search, quantum counting, coined hypercube walk."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..circuit import CircuitBuilder, Gate, Instruction
from ..errors import InvalidArgument
from .common import (GenResult, adjoint_instructions, check_bitstring, check_size, iqft_instructions,
                     make_result, optimal_iterations, rng_for, to_bits)

CATEGORY = "search"


@dataclass(frozen=True)
class GroverParams:
    problem_size: int
    marked: tuple[str, ...] | None = None
    M: int | None = None            # default 2^(n-2), at least 1
    iterations: int | None = None   # None means optimal
    seed: int = 0


@dataclass(frozen=True)
class CountingParams:
    problem_size: int
    searching_qubits: int | None = None   # default: problem_size
    M: int | None = None                  # None draws M from [1, 2^n]
    marked: tuple[str, ...] | None = None
    seed: int = 0


@dataclass(frozen=True)
class WalkParams:
    problem_size: int
    node_qubits: int | None = None
    theta_qubits: int | None = None
    iterations: int | None = None
    M: int | None = None
    marked: tuple[str, ...] | None = None
    seed: int = 0


def default_solutions(n: int) -> int:
    return max(1, 2 ** (n - 2))


def _resolve_marked(n: int, marked: Sequence[str] | None, M: int | None, rng) -> list[str]:
    if marked is not None:
        strings = [check_bitstring(s, n, "marked state") for s in marked]
        if len(set(strings)) != len(strings):
            raise InvalidArgument("marked states must be distinct")
        if M is not None and M != len(strings):
            raise InvalidArgument(f"M={M} disagrees with {len(strings)} marked states")
        if not strings:
            raise InvalidArgument("at least one marked state is required")
        return sorted(strings)
    if M is None:
        M = default_solutions(n)
    if not 1 <= M <= 2 ** n:
        raise InvalidArgument(f"need 1 <= M <= 2^{n}, got M={M}")
    picks = rng.choice(2 ** n, size=M, replace=False)
    return sorted(to_bits(int(v), n) for v in picks)


def phase_oracle(marked: Sequence[str], qubits: Sequence[int],
                 controls: Sequence[int] = ()) -> list[Instruction]:
    """Flip the sign of each marked basis state (optionally controlled)."""
    out: list[Instruction] = []
    *ctl_targets, last = qubits
    for s in marked:
        zeros = [q for i, q in enumerate(qubits) if s[len(s) - 1 - i] == "0"]
        out += [Instruction(Gate.X, (q,)) for q in zeros]
        out.append(_mcp(math.pi, [*controls, *ctl_targets], last))
        out += [Instruction(Gate.X, (q,)) for q in zeros]
    return out


def diffusion(qubits: Sequence[int], controls: Sequence[int] = ()) -> list[Instruction]:
    """H X C..P(pi) X H, i.e. -(2|s><s| - I) on ``qubits``."""
    *ctl_targets, last = qubits
    out = [Instruction(Gate.H, (q,)) for q in qubits]
    out += [Instruction(Gate.X, (q,)) for q in qubits]
    out.append(_mcp(math.pi, [*controls, *ctl_targets], last))
    out += [Instruction(Gate.X, (q,)) for q in qubits]
    out += [Instruction(Gate.H, (q,)) for q in qubits]
    return out


def _mcp(lam: float, controls: Sequence[int], target: int) -> Instruction:
    if not controls:
        return Instruction(Gate.PHASE, (target,), (lam,))
    if len(controls) == 1:
        return Instruction(Gate.CPHASE, (controls[0], target), (lam,))
    return Instruction(Gate.MCPHASE, (*controls, target), (lam,))


def _mcx(controls: Sequence[int], target: int) -> Instruction:
    if len(controls) == 1:
        return Instruction(Gate.CX, (controls[0], target))
    return Instruction(Gate.MCX, (*controls, target))


def gen_grover(params: GroverParams) -> GenResult:
    n = params.problem_size
    check_size(n)
    marked = _resolve_marked(n, params.marked, params.M, rng_for(params.seed))
    iterations = params.iterations
    if iterations is None:
        iterations = optimal_iterations(len(marked), 2 ** n)
    if iterations < 0:
        raise InvalidArgument("iterations must be non-negative")
    qubits = list(range(n))
    b = CircuitBuilder(n, n)
    for q in qubits:
        b.h(q)
    for _ in range(iterations):
        b.extend(phase_oracle(marked, qubits))
        b.extend(diffusion(qubits))
    for q in qubits:
        b.measure(q, q)
    return make_result(b, "grover", CATEGORY, params, marked=marked, M=len(marked),
                       iterations=iterations)


def gen_quantum_counting(params: CountingParams) -> GenResult:
    """Counting register 0..t-1, search register t..t+n-1.

    The circuit's Grover iterate equals minus the textbook one, so each
    controlled application is followed by Z on its control to restore the
    eigenphases exp(+-i theta) with sin^2(theta/2) = M/N.
    """
    t = params.problem_size
    check_size(t)
    n = t if params.searching_qubits is None else params.searching_qubits
    check_size(n, 1, "searching_qubits")
    rng = rng_for(params.seed)
    M = params.M
    if M is None and params.marked is None:
        M = int(rng.integers(1, 2 ** n + 1))
    marked = _resolve_marked(n, params.marked, M, rng)
    search = list(range(t, t + n))
    b = CircuitBuilder(t + n, t)
    for q in range(t + n):
        b.h(q)
    for k in range(t):
        step = phase_oracle(marked, search, (k,)) + diffusion(search, (k,))
        step.append(Instruction(Gate.Z, (k,)))
        for _ in range(2 ** k):
            b.extend(step)
    b.extend(iqft_instructions(list(range(t))))
    for q in range(t):
        b.measure(q, q)
    return make_result(b, "counting", CATEGORY, params, marked=marked, M=len(marked),
                       searching_qubits=n)


def _walk_step(ctrl: int, nodes: list[int], coins: list[int]) -> list[Instruction]:
    """Controlled W = Shift (GroverCoin x I) on the 2^p-dimensional hypercube."""
    out = diffusion(coins, (ctrl,))
    out.append(Instruction(Gate.Z, (ctrl,)))
    for d, node in enumerate(nodes):
        zeros = [c for i, c in enumerate(coins) if not (d >> i) & 1]
        out += [Instruction(Gate.X, (c,)) for c in zeros]
        out.append(_mcx([ctrl, *coins], node))
        out += [Instruction(Gate.X, (c,)) for c in zeros]
    return out


def walk_layout(p: int, theta_qubits: int | None = None) -> dict[str, list[int]]:
    dim = 2 ** p
    t = dim if theta_qubits is None else theta_qubits
    theta = list(range(t))
    nodes = list(range(t, t + dim))
    coins = list(range(t + dim, t + dim + p))
    return {"theta": theta, "nodes": nodes, "coins": coins, "ancilla": [t + dim + p]}


def gen_quantum_walk(params: WalkParams) -> GenResult:
    """Search on the hypercube {0,1}^(2^p) with a Grover-coin walk.

    Each iteration applies the node phase oracle and then reflects about the
    walk's stationary state: phase estimation of W on the theta register,
    a sign flip of the zero-phase component (through the ancilla, which is
    a reflection up to global phase), and the inverse phase estimation.
    All node qubits are measured.
    """
    p = params.problem_size
    check_size(p)
    dim = 2 ** p
    if params.node_qubits is not None and params.node_qubits != dim:
        raise InvalidArgument(f"node_qubits must equal 2^p = {dim}")
    if params.theta_qubits is not None:
        check_size(params.theta_qubits, 1, "theta_qubits")
    M = params.M if params.M is not None or params.marked is not None else default_solutions(p)
    marked = _resolve_marked(dim, params.marked, M, rng_for(params.seed))
    iterations = params.iterations
    if iterations is None:
        iterations = optimal_iterations(len(marked), 2 ** dim)
    layout = walk_layout(p, params.theta_qubits)
    theta, nodes, coins = layout["theta"], layout["nodes"], layout["coins"]
    anc = layout["ancilla"][0]
    width = anc + 1

    qpe: list[Instruction] = [Instruction(Gate.H, (q,)) for q in theta]
    for k, ctrl in enumerate(theta):
        step = _walk_step(ctrl, nodes, coins)
        for _ in range(2 ** k):
            qpe += step
    qpe += iqft_instructions(theta)
    flip = [Instruction(Gate.X, (q,)) for q in theta]
    flip.append(_mcx(theta, anc))
    flip.append(Instruction(Gate.Z, (anc,)))
    flip.append(_mcx(theta, anc))
    flip += [Instruction(Gate.X, (q,)) for q in theta]

    b = CircuitBuilder(width, dim)
    for q in nodes + coins:
        b.h(q)
    for _ in range(iterations):
        b.extend(phase_oracle(marked, nodes))
        b.extend(qpe)
        b.extend(flip)
        b.extend(adjoint_instructions(qpe))
    for i, q in enumerate(nodes):
        b.measure(q, i)
    return make_result(b, "walk", CATEGORY, params, marked=marked, M=len(marked),
                       iterations=iterations, layout=layout)
