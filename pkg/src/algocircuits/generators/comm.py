"""Communication protocols: BB84 key distribution, superdense coding, teleportation."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..circuit import CircuitBuilder
from ..errors import InvalidArgument
from .common import GenResult, bit, check_bitstring, check_size, make_result, random_bits, rng_for

CATEGORY = "communication"


@dataclass(frozen=True)
class QkdParams:
    problem_size: int
    interception: bool = True
    seed: int = 0


@dataclass(frozen=True)
class SuperdenseParams:
    problem_size: int
    message: str | None = None
    seed: int = 0


@dataclass(frozen=True)
class TeleportParams:
    problem_size: int
    states: tuple[tuple[float, float, float], ...] | None = None
    seed: int = 0


def gen_qkd(params: QkdParams) -> GenResult:
    """One BB84 round per qubit; basis strings use "1" for the X basis.

    Clbits 0..n-1 hold the attacker's results when interception is on and
    the receiver's results follow; without interception the receiver uses
    clbits 0..n-1. The attacker's re-preparation H and the receiver's basis
    H are merged into a single H, applied when their bases differ.
    """
    n = params.problem_size
    check_size(n)
    rng = rng_for(params.seed)
    sender_bits = random_bits(rng, n)
    sender_bases = random_bits(rng, n)
    receiver_bases = random_bits(rng, n)
    attacker_bases = random_bits(rng, n) if params.interception else None
    offset = n if params.interception else 0
    b = CircuitBuilder(n, n + offset)
    for q in range(n):
        if bit(sender_bits, q):
            b.x(q)
        if bit(sender_bases, q):
            b.h(q)
        if attacker_bases is not None:
            if bit(attacker_bases, q):
                b.h(q)
            b.measure(q, q)
            if bit(attacker_bases, q) != bit(receiver_bases, q):
                b.h(q)
        elif bit(receiver_bases, q):
            b.h(q)
        b.measure(q, offset + q)
    return make_result(
        b, "qkd", CATEGORY, params, sender_bits=sender_bits, sender_bases=sender_bases,
        receiver_bases=receiver_bases, attacker_bases=attacker_bases,
        receiver_clbits=list(range(offset, offset + n)),
        attacker_clbits=list(range(n)) if params.interception else [])


def gen_superdense(params: SuperdenseParams) -> GenResult:
    """Pair i uses qubits (2i, 2i+1); the sender holds 2i.

    Message bit 2i selects Z and bit 2i+1 selects X on the sender qubit, so
    the decoded measurement string equals the message.
    """
    n = params.problem_size
    check_size(n)
    if n % 2:
        raise InvalidArgument(f"superdense coding needs an even width, got {n}")
    msg = params.message
    if msg is None:
        msg = random_bits(rng_for(params.seed), n)
    check_bitstring(msg, n, "message")
    b = CircuitBuilder(n, n)
    for i in range(n // 2):
        b.h(2 * i).cx(2 * i, 2 * i + 1)
    for i in range(n // 2):
        if bit(msg, 2 * i + 1):
            b.x(2 * i)
        if bit(msg, 2 * i):
            b.z(2 * i)
    for i in range(n // 2):
        b.cx(2 * i, 2 * i + 1).h(2 * i)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "superdense", CATEGORY, params, message=msg, expected=msg,
                       pairs=[[2 * i, 2 * i + 1] for i in range(n // 2)])


def gen_teleport(params: TeleportParams) -> GenResult:
    k = params.problem_size
    check_size(k, 1)
    states = params.states
    if states is None:
        rng = rng_for(params.seed)
        states = tuple(tuple(float(v) for v in rng.uniform(0, 2 * math.pi, 3)) for _ in range(k))
    if len(states) != k or any(len(s) != 3 for s in states):
        raise InvalidArgument(f"need {k} (theta, phi, lambda) triples")
    b = CircuitBuilder(3 * k, k)
    for s, (theta, phi, lam) in enumerate(states):
        q0, q1, q2 = 3 * s, 3 * s + 1, 3 * s + 2
        b.u3(theta, phi, lam, q0)
        b.barrier(q0, q1, q2)
        b.h(q1).cx(q1, q2)
        b.barrier(q0, q1, q2)
        b.cx(q0, q1).h(q0)
        b.barrier(q0, q1, q2)
        b.cx(q1, q2).cz(q0, q2)
        b.barrier(q0, q1, q2)
        b.u3(-theta, -lam, -phi, q2)
        b.measure(q2, s)
    return make_result(b, "teleport", CATEGORY, params, states=[list(s) for s in states],
                       expected="0" * k)
