"""Fourier-family generators: QFT round trip, phase estimation, Shor factoring.

The Shor pipeline follows the ancilla-light modular-exponentiation layout:
phase-space constant adders, a doubly-controlled modular adder that uses one
comparison ancilla, a controlled multiply-accumulate, and the multiply /
swap / inverse-multiply trick that leaves the scratch register clean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from ..circuit import Circuit, CircuitBuilder, Gate, Instruction, remap
from ..errors import InvalidArgument
from .common import (GenResult, adjoint_instructions, check_size, iqft_instructions, make_result,
                     qft_instructions, rng_for)

CATEGORY = "fourier"
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class QftParams:
    problem_size: int
    init_value: int | None = None   # None draws x uniformly from [0, 2^n)
    inverse: bool = True
    measure: bool = True
    initialize: bool = True         # prepare x in the Fourier basis first
    seed: int = 0


@dataclass(frozen=True)
class QpeParams:
    problem_size: int
    theta: float = 1 / 8
    controlled_power_mode: Literal["repeat", "fused"] = "repeat"
    seed: int = 0


@dataclass(frozen=True)
class ShorParams:
    N: int
    a: int | None = None            # None draws a coprime base
    seed: int = 0


def fourier_state_instructions(value: int, qubits: list[int]) -> list[Instruction]:
    """Prepare QFT|value> directly: H everywhere, then one phase per qubit."""
    n = len(qubits)
    out = [Instruction(Gate.H, (q,)) for q in qubits]
    for j, q in enumerate(qubits):
        out.append(Instruction(Gate.PHASE, (q,), (TWO_PI * value / 2 ** (n - j),)))
    return out


def gen_qft(params: QftParams) -> GenResult:
    n = params.problem_size
    check_size(n)
    x = params.init_value
    if x is None:
        x = int(rng_for(params.seed).integers(0, 2 ** n))
    if not 0 <= x < 2 ** n:
        raise InvalidArgument(f"init_value must lie in [0, 2^{n}), got {x}")
    qubits = list(range(n))
    b = CircuitBuilder(n, n if params.measure else 0)
    if params.initialize:
        b.extend(fourier_state_instructions(x, qubits))
    b.extend(iqft_instructions(qubits) if params.inverse else qft_instructions(qubits))
    if params.measure:
        for q in qubits:
            b.measure(q, q)
    expected = format(x, f"0{n}b") if (params.initialize and params.inverse) else None
    return make_result(b, "qft", CATEGORY, params, init_value=x, expected=expected)


def gen_qpe(params: QpeParams) -> GenResult:
    """Counting qubits 0..t-1, eigenstate qubit t with U = PHASE(2 pi theta)."""
    t = params.problem_size
    check_size(t)
    theta = float(params.theta)
    if not 0.0 <= theta < 1.0:
        raise InvalidArgument(f"theta must lie in [0, 1), got {theta}")
    if params.controlled_power_mode not in ("repeat", "fused"):
        raise InvalidArgument(f"unknown controlled_power_mode {params.controlled_power_mode!r}")
    target = t
    b = CircuitBuilder(t + 1, t)
    b.x(target)
    for q in range(t):
        b.h(q)
    for k in range(t):
        if params.controlled_power_mode == "repeat":
            for _ in range(2 ** k):
                b.cp(TWO_PI * theta, k, target)
        else:
            b.cp(TWO_PI * theta * 2 ** k, k, target)
    b.extend(iqft_instructions(list(range(t))))
    for q in range(t):
        b.measure(q, q)
    scaled = theta * 2 ** t
    exact = abs(scaled - round(scaled)) < 1e-12
    expected = format(round(scaled) % 2 ** t, f"0{t}b") if exact else None
    return make_result(b, "qpe", CATEGORY, params, theta=theta, expected=expected)


# --- modular arithmetic building blocks -----------------------------------

def _adder_angles(value: int, width: int, swapped: bool) -> list[float]:
    """Per-qubit phases adding ``value`` to a Fourier-basis register.

    With the swapped QFT convention qubit j carries phase 2 pi y 2^j / 2^width;
    without the final swaps qubit j carries 2 pi y / 2^(j+1).
    """
    out = []
    for j in range(width):
        denom = 2 ** (width - j) if swapped else 2 ** (j + 1)
        out.append(TWO_PI * ((value % denom) / denom))
    return out


def _phase_add(value: int, reg: list[int], controls: tuple[int, ...] = (),
               sign: int = 1) -> list[Instruction]:
    out = []
    for q, angle in zip(reg, _adder_angles(value, len(reg), swapped=False)):
        if angle == 0.0:
            continue
        angle *= sign
        if not controls:
            out.append(Instruction(Gate.PHASE, (q,), (angle,)))
        elif len(controls) == 1:
            out.append(Instruction(Gate.CPHASE, (controls[0], q), (angle,)))
        else:
            out.append(Instruction(Gate.MCPHASE, (*controls, q), (angle,)))
    return out


def build_qft_const_adder(value: int, width: int) -> Circuit:
    """Phase-space addition of a classical constant on a ``width``-qubit register.

    Assumes the register holds QFT|y> in the standard (swapped) convention;
    following with the inverse QFT yields (y + value) mod 2^width.
    """
    check_size(width, 1, "width")
    b = CircuitBuilder(width)
    for q, angle in enumerate(_adder_angles(value, width, swapped=True)):
        if angle != 0.0:
            b.p(angle, q)
    return b.build()


def _cc_mod_add(a: int, N: int, c1: int, c2: int, reg: list[int], anc: int) -> list[Instruction]:
    """Doubly-controlled |b> -> |b + a mod N> on a Fourier-basis register (b < N)."""
    msb = reg[-1]
    qft = qft_instructions(reg, swaps=False)
    iqft = adjoint_instructions(qft)
    out: list[Instruction] = []
    out += _phase_add(a, reg, (c1, c2))
    out += _phase_add(N, reg, sign=-1)
    out += iqft
    out.append(Instruction(Gate.CX, (msb, anc)))
    out += qft
    out += _phase_add(N, reg, (anc,))
    out += _phase_add(a, reg, (c1, c2), sign=-1)
    out += iqft
    out += [Instruction(Gate.X, (msb,)), Instruction(Gate.CX, (msb, anc)), Instruction(Gate.X, (msb,))]
    out += qft
    out += _phase_add(a, reg, (c1, c2))
    return out


def _c_mult_add(a: int, N: int, ctrl: int, xs: list[int], reg: list[int], anc: int) -> list[Instruction]:
    """|c>|x>|b> -> |c>|x>|b + c*a*x mod N>."""
    qft = qft_instructions(reg, swaps=False)
    out = list(qft)
    for i, xq in enumerate(xs):
        out += _cc_mod_add((a * 2 ** i) % N, N, ctrl, xq, reg, anc)
    out += adjoint_instructions(qft)
    return out


@lru_cache(maxsize=64)
def build_c_modmul(a_power: int, N: int, n: int) -> Circuit:
    """Controlled |y> -> |a_power * y mod N> on 2n+3 qubits.

    Layout: qubit 0 control, 1..n the y register, n+1..2n+1 an (n+1)-qubit
    scratch register, 2n+2 the comparison ancilla. Scratch and ancilla
    start and end in |0>; the action is only defined for y < N.
    """
    if N < 2 or n < N.bit_length():
        raise InvalidArgument(f"register width {n} too small for N={N}")
    if math.gcd(a_power, N) != 1:
        raise InvalidArgument(f"multiplier {a_power} is not coprime to {N}")
    a_power %= N
    ctrl = 0
    ys = list(range(1, n + 1))
    scratch = list(range(n + 1, 2 * n + 2))
    anc = 2 * n + 2
    b = CircuitBuilder(2 * n + 3)
    if a_power == 1:
        return b.build()
    b.extend(_c_mult_add(a_power, N, ctrl, ys, scratch, anc))
    for y, s in zip(ys, scratch):
        b.cx(s, y)
        b.mcx([ctrl, y], s)
        b.cx(s, y)
    inv = pow(a_power, -1, N)
    b.extend(adjoint_instructions(_c_mult_add(inv, N, ctrl, ys, scratch, anc)))
    return b.build()


# --- Shor -------------------------------------------------------------------

def _perfect_power_root(N: int) -> int | None:
    for k in range(2, N.bit_length() + 1):
        m = round(N ** (1 / k))
        for cand in (m - 1, m, m + 1):
            if cand > 1 and cand ** k == N:
                return cand
    return None


def _is_prime(N: int) -> bool:
    if N < 2:
        return False
    return all(N % d for d in range(2, math.isqrt(N) + 1))


def screen_modulus(N: int) -> tuple[str, list[int]]:
    """Classical screening: ("quantum", []) or ("classical-shortcut", factors)."""
    if N < 3:
        raise InvalidArgument(f"N must be at least 3, got {N}")
    if N % 2 == 0:
        return "classical-shortcut", [2, N // 2]
    if _is_prime(N):
        return "classical-shortcut", []
    root = _perfect_power_root(N)
    if root is not None:
        return "classical-shortcut", [root]
    return "quantum", []


def multiplicative_order(a: int, N: int) -> int:
    r, v = 1, a % N
    while v != 1:
        v = v * a % N
        r += 1
    return r


def gen_shor(params: ShorParams) -> GenResult:
    N = int(params.N)
    status, factors = screen_modulus(N)
    n = N.bit_length()
    if status != "quantum":
        return make_result(None, "shor", CATEGORY, params, N=N, a=params.a, n=n,
                           status=status, factors=factors)
    a = params.a
    if a is None:
        rng = rng_for(params.seed)
        choices = [v for v in range(2, N) if math.gcd(v, N) == 1]
        a = int(choices[int(rng.integers(0, len(choices)))])
    if not 1 < a < N:
        raise InvalidArgument(f"a must satisfy 1 < a < N, got {a}")
    g = math.gcd(a, N)
    if g != 1:
        return make_result(None, "shor", CATEGORY, params, N=N, a=a, n=n,
                           status="lucky-gcd", factors=sorted({g, N // g}))
    t = 2 * n
    width = 4 * n + 2
    target = list(range(t, t + n))
    scratch = list(range(t + n, t + 2 * n + 1))
    anc = t + 2 * n + 1
    b = CircuitBuilder(width, t)
    for q in range(t):
        b.h(q)
    b.x(target[0])
    for k in range(t):
        block = build_c_modmul(pow(a, 2 ** k, N), N, n)
        b.extend(remap(block, [k, *target, *scratch, anc], width).instructions)
    b.extend(iqft_instructions(list(range(t))))
    for q in range(t):
        b.measure(q, q)
    return make_result(b, "shor", CATEGORY, params, N=N, a=a, n=n, status="circuit",
                       counting_qubits=t, period=multiplicative_order(a, N))
