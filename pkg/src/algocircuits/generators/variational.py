"""Variational circuits with fixed or random angles (no optimizer loop)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from ..circuit import CircuitBuilder, Gate
from ..errors import InvalidArgument
from .common import GenResult, check_size, make_result, rng_for

CATEGORY = "variational"
_ROTATIONS = {"RX": Gate.RX, "RY": Gate.RY, "RZ": Gate.RZ}


@dataclass(frozen=True)
class QaoaParams:
    problem_size: int
    graph: tuple[tuple[int, int], ...] | None = None   # None means cyclic
    reps: int = 1
    gammas: tuple[float, ...] | None = None
    betas: tuple[float, ...] | None = None
    seed: int = 0


@dataclass(frozen=True)
class VqeParams:
    problem_size: int
    rotation_gates: tuple[str, ...] = ("RY", "RZ")
    entanglement: Literal["full", "linear", "circular"] = "full"
    reps: int = 1
    angles: tuple[float, ...] | None = None
    seed: int = 0


@dataclass(frozen=True)
class VqcParams:
    problem_size: int
    fm_reps: int = 1
    vf_reps: int = 1
    features: tuple[float, ...] | None = None
    angles: tuple[float, ...] | None = None
    seed: int = 0


def _angles(given: Sequence[float] | None, count: int, rng, what: str) -> list[float]:
    if given is None:
        return [float(v) for v in rng.uniform(0.0, 2 * math.pi, count)]
    if len(given) != count:
        raise InvalidArgument(f"{what}: expected {count} values, got {len(given)}")
    return [float(v) for v in given]


def cyclic_graph(n: int) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    return [(i, (i + 1) % n) for i in range(n)]


def gen_qaoa(params: QaoaParams) -> GenResult:
    n = params.problem_size
    check_size(n)
    check_size(params.reps, 1, "reps")
    edges = cyclic_graph(n) if params.graph is None else [tuple(e) for e in params.graph]
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise InvalidArgument(f"invalid edge ({u}, {v}) for {n} nodes")
    rng = rng_for(params.seed)
    gammas = _angles(params.gammas, params.reps, rng, "gammas")
    betas = _angles(params.betas, params.reps, rng, "betas")
    b = CircuitBuilder(n, n)
    for q in range(n):
        b.h(q)
    for gamma, beta in zip(gammas, betas):
        for u, v in edges:
            b.rzz(gamma, u, v)
        for q in range(n):
            b.rx(2 * beta, q)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "qaoa", CATEGORY, params, edges=[list(e) for e in edges],
                       gammas=gammas, betas=betas)


def entangler_pairs(n: int, pattern: str) -> list[tuple[int, int]]:
    if pattern == "full":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if pattern == "linear":
        return [(i, i + 1) for i in range(n - 1)]
    if pattern == "circular":
        return [(i, i + 1) for i in range(n - 1)] + ([(n - 1, 0)] if n > 2 else [])
    raise InvalidArgument(f"unknown entanglement pattern {pattern!r}")


def gen_vqe(params: VqeParams) -> GenResult:
    n = params.problem_size
    check_size(n)
    check_size(params.reps, 1, "reps")
    if not params.rotation_gates:
        raise InvalidArgument("rotation_gates must not be empty")
    try:
        kinds = [_ROTATIONS[g.upper()] for g in params.rotation_gates]
    except KeyError as exc:
        raise InvalidArgument(f"unknown rotation gate {exc.args[0]!r}") from None
    pairs = entangler_pairs(n, params.entanglement)
    per_layer = len(kinds) * n
    angles = _angles(params.angles, per_layer * (params.reps + 1), rng_for(params.seed), "angles")
    it = iter(angles)
    b = CircuitBuilder(n, n)
    for layer in range(params.reps + 1):
        for kind in kinds:
            for q in range(n):
                b.add(kind, (q,), (next(it),))
        if layer < params.reps:
            for i, j in pairs:
                b.cx(i, j)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "vqe", CATEGORY, params, angles=angles)


def gen_vqc(params: VqcParams) -> GenResult:
    """Second-order ZZ feature map followed by a RealAmplitudes-style ansatz."""
    n = params.problem_size
    check_size(n)
    check_size(params.fm_reps, 1, "fm_reps")
    check_size(params.vf_reps, 1, "vf_reps")
    rng = rng_for(params.seed)
    x = _angles(params.features, n, rng, "features")
    angles = _angles(params.angles, n * (params.vf_reps + 1), rng, "angles")
    b = CircuitBuilder(n, n)
    for _ in range(params.fm_reps):
        for q in range(n):
            b.h(q)
        for q in range(n):
            b.p(2 * x[q], q)
        for i in range(n):
            for j in range(i + 1, n):
                b.cx(i, j)
                b.p(2 * (math.pi - x[i]) * (math.pi - x[j]), j)
                b.cx(i, j)
    it = iter(angles)
    for layer in range(params.vf_reps + 1):
        for q in range(n):
            b.ry(next(it), q)
        if layer < params.vf_reps:
            for i in range(n - 1):
                b.cx(i, i + 1)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "vqc", CATEGORY, params, features=x, angles=angles)
