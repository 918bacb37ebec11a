"""Algorithm registry: id -> category, generator, parameter class, complexity rating."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Callable

from ..errors import InvalidArgument
from .comm import (QkdParams, SuperdenseParams, TeleportParams, gen_qkd, gen_superdense,
                   gen_teleport)
from .common import AlgoMetadata, GenResult
from .fourier import (QftParams, QpeParams, ShorParams, build_c_modmul, build_qft_const_adder,
                      gen_qft, gen_qpe, gen_shor)
from .query import QueryParams, gen_bernstein_vazirani, gen_deutsch_jozsa, gen_simon
from .search import (CountingParams, GroverParams, WalkParams, gen_grover, gen_quantum_counting,
                     gen_quantum_walk)
from .variational import QaoaParams, VqcParams, VqeParams, gen_qaoa, gen_vqc, gen_vqe


@dataclass(frozen=True)
class AlgorithmInfo:
    algorithm: str
    name: str
    category: str
    generate: Callable[[Any], GenResult]
    params_cls: type
    rating: int   # 1-3 stars, provisional


# listed in category order; ratings rise within each category
ALGORITHMS: dict[str, AlgorithmInfo] = {a.algorithm: a for a in (
    AlgorithmInfo("dj", "Deutsch-Jozsa", "query", gen_deutsch_jozsa, QueryParams, 1),
    AlgorithmInfo("bv", "Bernstein-Vazirani", "query", gen_bernstein_vazirani, QueryParams, 2),
    AlgorithmInfo("simon", "Simon", "query", gen_simon, QueryParams, 3),
    AlgorithmInfo("qft", "Quantum Fourier transform", "fourier", gen_qft, QftParams, 1),
    AlgorithmInfo("qpe", "Quantum phase estimation", "fourier", gen_qpe, QpeParams, 2),
    AlgorithmInfo("shor", "Shor factoring", "fourier", gen_shor, ShorParams, 3),
    AlgorithmInfo("grover", "Grover search", "search", gen_grover, GroverParams, 1),
    AlgorithmInfo("counting", "Quantum counting", "search", gen_quantum_counting, CountingParams, 2),
    AlgorithmInfo("walk", "Quantum walk search", "search", gen_quantum_walk, WalkParams, 3),
    AlgorithmInfo("qkd", "BB84 key distribution", "communication", gen_qkd, QkdParams, 1),
    AlgorithmInfo("superdense", "Superdense coding", "communication", gen_superdense,
                  SuperdenseParams, 2),
    AlgorithmInfo("teleport", "Quantum teleportation", "communication", gen_teleport,
                  TeleportParams, 3),
    AlgorithmInfo("qaoa", "QAOA MaxCut", "variational", gen_qaoa, QaoaParams, 1),
    AlgorithmInfo("vqe", "VQE ansatz", "variational", gen_vqe, VqeParams, 2),
    AlgorithmInfo("vqc", "Variational classifier", "variational", gen_vqc, VqcParams, 3),
)}


def get_algorithm(algorithm: str) -> AlgorithmInfo:
    try:
        return ALGORITHMS[algorithm]
    except KeyError:
        raise InvalidArgument(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}") from None


def make_params(algorithm: str, **kwargs: Any) -> Any:
    """Build the parameter object for ``algorithm``, dropping None values
    so dataclass defaults apply. Lists become tuples."""
    info = get_algorithm(algorithm)
    names = {f.name for f in dataclasses.fields(info.params_cls)}
    unknown = set(kwargs) - names
    if unknown:
        raise InvalidArgument(f"{algorithm} does not accept {sorted(unknown)}")
    clean = {}
    for k, v in kwargs.items():
        if v is None:
            continue
        if isinstance(v, list):
            v = tuple(tuple(x) if isinstance(x, list) else x for x in v)
        clean[k] = v
    return info.params_cls(**clean)


def generate(algorithm: str, **kwargs: Any) -> GenResult:
    return get_algorithm(algorithm).generate(make_params(algorithm, **kwargs))


__all__ = [
    "ALGORITHMS", "AlgoMetadata", "AlgorithmInfo", "CountingParams", "GenResult", "GroverParams",
    "QaoaParams", "QftParams", "QkdParams", "QpeParams", "QueryParams", "ShorParams",
    "SuperdenseParams", "TeleportParams", "VqcParams", "VqeParams", "WalkParams",
    "build_c_modmul", "build_qft_const_adder", "gen_bernstein_vazirani", "gen_deutsch_jozsa",
    "gen_grover", "gen_qaoa", "gen_qft", "gen_qkd", "gen_qpe", "gen_quantum_counting",
    "gen_quantum_walk", "gen_shor", "gen_simon", "gen_superdense", "gen_teleport", "gen_vqc",
    "gen_vqe", "generate", "get_algorithm", "make_params",
]
