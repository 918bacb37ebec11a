"""Oracle-query algorithms: Deutsch-Jozsa, Bernstein-Vazirani, Simon."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from ..circuit import CircuitBuilder
from ..errors import InvalidArgument
from .common import GenResult, check_bitstring, check_size, make_result, ones, random_bits, rng_for

CATEGORY = "query"


@dataclass(frozen=True)
class QueryParams:
    problem_size: int
    oracle_content: str | None = None   # None draws a random bitstring
    dj_oracle_type: Literal["constant", "balanced"] = "constant"
    dj_constant_value: int | None = 1   # constant-oracle output; None draws it
    seed: int = 0


def _content(params: QueryParams, rng, nonzero: bool = False) -> str:
    n = params.problem_size
    if params.oracle_content is None:
        return random_bits(rng, n, nonzero=nonzero)
    return check_bitstring(params.oracle_content, n, "oracle content")


def gen_deutsch_jozsa(params: QueryParams) -> GenResult:
    """Inputs are qubits 0..n-1, the output qubit is n.

    The constant oracle flips the output (f=1) or does nothing (f=0); the
    balanced oracle computes the parity of ``x XOR b`` for a random
    wrapping pattern ``b``.
    """
    n = params.problem_size
    check_size(n)
    rng = rng_for(params.seed)
    out = n
    b = CircuitBuilder(n + 1, n)
    for q in range(n):
        b.h(q)
    b.x(out).h(out)
    b.barrier()
    if params.dj_oracle_type == "constant":
        value = params.dj_constant_value
        if value is None:
            value = int(rng.integers(0, 2))
        if value not in (0, 1):
            raise InvalidArgument("constant oracle value must be 0 or 1")
        if value:
            b.x(out)
        data = {"oracle_type": "constant", "constant_value": value, "oracle_content": "0" * n}
    elif params.dj_oracle_type == "balanced":
        pattern = _content(params, rng)
        wrap = ones(pattern)
        for q in wrap:
            b.x(q)
        for q in range(n):
            b.cx(q, out)
        for q in wrap:
            b.x(q)
        data = {"oracle_type": "balanced", "oracle_content": pattern}
    else:
        raise InvalidArgument(f"unknown oracle type {params.dj_oracle_type!r}")
    b.barrier()
    for q in range(n):
        b.h(q)
    for q in range(n):
        b.measure(q, q)
    data["expected"] = "0" * n if data["oracle_type"] == "constant" else "nonzero"
    return make_result(b, "dj", CATEGORY, params, **data)


def gen_bernstein_vazirani(params: QueryParams) -> GenResult:
    n = params.problem_size
    check_size(n)
    secret = _content(params, rng_for(params.seed))
    aux = n
    b = CircuitBuilder(n + 1, n)
    for q in range(n):
        b.h(q)
    b.x(aux).h(aux)
    b.barrier()
    for q in ones(secret):
        b.cx(q, aux)
    b.barrier()
    for q in range(n):
        b.h(q)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "bv", CATEGORY, params, secret=secret, oracle_content=secret)


def gen_simon(params: QueryParams) -> GenResult:
    """First register 0..n-1, second register n..2n-1; only the first is measured.

    The oracle copies x into the second register and, when ``s`` is nonzero,
    XORs ``s`` in controlled on the lowest set bit of ``s``, giving
    f(x) = f(x XOR s).
    """
    n = params.problem_size
    check_size(n)
    secret = _content(params, rng_for(params.seed), nonzero=True)
    b = CircuitBuilder(2 * n, n)
    for q in range(n):
        b.h(q)
    b.barrier()
    for q in range(n):
        b.cx(q, n + q)
    set_bits = ones(secret)
    if set_bits:
        j = set_bits[0]
        for i in set_bits:
            b.cx(j, n + i)
    b.barrier()
    for q in range(n):
        b.h(q)
    for q in range(n):
        b.measure(q, q)
    return make_result(b, "simon", CATEGORY, params, secret=secret, oracle_content=secret)
