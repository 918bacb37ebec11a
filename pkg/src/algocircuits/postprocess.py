"""Classical post-processing: turns measurement outcomes into algorithm answers."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import InvalidArgument
from .generators import GenResult, make_params
from .generators import get_algorithm
from .generators.common import AlgoMetadata, bit
from .simulator import Histogram, outcome_distribution


# --- Simon ------------------------------------------------------------------

@dataclass
class Gf2System:
    """Rows over GF(2) written as bitstrings (bit 0 rightmost)."""

    rows: list[str]

    def __post_init__(self) -> None:
        if len({len(r) for r in self.rows}) > 1:
            raise InvalidArgument("GF(2) rows must share one length")

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def _reduce(vectors: Iterable[int]) -> dict[int, int]:
    """Row-reduce integers (as bit vectors); returns pivot bit -> row, fully reduced."""
    pivots: dict[int, int] = {}
    for v in vectors:
        for p, row in pivots.items():
            if (v >> p) & 1:
                v ^= row
        if v == 0:
            continue
        p = v.bit_length() - 1
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= v
        pivots[p] = v
    return pivots


def gf2_rank(rows: Iterable[str]) -> int:
    return len(_reduce(int(r, 2) for r in rows))


def simon_solve(samples: Gf2System | Iterable[str]) -> str:
    """Recover the Simon secret from measured y's.

    Returns the secret bitstring when the samples have rank n-1,
    "one-to-one" when they have full rank (only s=0 fits), and
    "insufficient" otherwise.
    """
    system = samples if isinstance(samples, Gf2System) else Gf2System(list(samples))
    n = system.width
    if not system.rows:
        raise InvalidArgument("simon_solve needs at least one sample")
    pivots = _reduce(int(r, 2) for r in system.rows)
    rank = len(pivots)
    if rank == n:
        return "one-to-one"
    if rank < n - 1:
        return "insufficient"
    free = next(b for b in range(n) if b not in pivots)
    s = 1 << free
    for p, row in pivots.items():
        if (row >> free) & 1:
            s |= 1 << p
    return format(s, f"0{n}b")


# --- Shor -------------------------------------------------------------------

@dataclass
class FactorResult:
    N: int
    a: int | None
    x: int | None
    r: int | None
    factors: list[int]
    status: str   # classical-shortcut | lucky-gcd | success | retry-needed

    def to_dict(self) -> dict[str, Any]:
        return {"N": self.N, "a": self.a, "x": self.x, "r": self.r,
                "factors": self.factors, "status": self.status}


def convergents(frac: Fraction) -> list[Fraction]:
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    num, den = frac.numerator, frac.denominator
    while den:
        q = num // den
        num, den = den, num - q * den
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        out.append(Fraction(h1, k1))
    return out


def shor_postprocess(x: int, t: int, N: int, a: int) -> FactorResult:
    if not 0 <= x < 2 ** t:
        raise InvalidArgument(f"measured value {x} outside [0, 2^{t})")
    if x == 0:
        return FactorResult(N, a, x, None, [], "retry-needed")
    r = None
    for c in convergents(Fraction(x, 2 ** t)):
        d = c.denominator
        if d >= N:
            break
        if pow(a, d, N) == 1:
            r = d
            break
    if r is None or r % 2:
        return FactorResult(N, a, x, r, [], "retry-needed")
    half = pow(a, r // 2, N)
    if half == N - 1:
        return FactorResult(N, a, x, r, [], "retry-needed")
    factors = sorted({g for g in (math.gcd(half - 1, N), math.gcd(half + 1, N)) if 1 < g < N})
    return FactorResult(N, a, x, r, factors, "success" if factors else "retry-needed")


def shor_classical_result(meta: AlgoMetadata) -> FactorResult:
    """Result for screened instances that never produced a circuit."""
    d = meta.data
    return FactorResult(d["N"], d.get("a"), None, None, list(d.get("factors", [])), d["status"])


# --- counting ---------------------------------------------------------------

def counting_estimate(x: int, t: int, n: int) -> float:
    if not 0 <= x < 2 ** t:
        raise InvalidArgument(f"measured value {x} outside [0, 2^{t})")
    return 2 ** n * math.sin(math.pi * x / 2 ** t) ** 2


# --- QKD --------------------------------------------------------------------

@dataclass
class SiftResult:
    sifted_positions: list[int]
    key: str             # sender bits at sifted positions, first position rightmost
    compared: int        # sifted bits compared over all shots
    mismatches: int
    verdict: str         # clean | detected | inconclusive

    @property
    def mismatch_rate(self) -> float:
        return self.mismatches / self.compared if self.compared else 0.0


def qkd_sift(meta: AlgoMetadata, outcomes: Histogram | Mapping[str, int] | Iterable[str]) -> SiftResult:
    d = meta.data
    sender_bits, sender_bases, receiver_bases = d["sender_bits"], d["sender_bases"], d["receiver_bases"]
    n = len(sender_bits)
    receiver_clbits = d["receiver_clbits"]
    width = n + len(d.get("attacker_clbits", []))
    if isinstance(outcomes, Histogram):
        items = outcomes.counts.items()
    elif isinstance(outcomes, Mapping):
        items = outcomes.items()
    else:
        items = ((s, 1) for s in outcomes)
    sifted = [q for q in range(n) if bit(sender_bases, q) == bit(receiver_bases, q)]
    key = "".join(sender_bits[n - 1 - q] for q in reversed(sifted))
    compared = mismatches = 0
    for outcome, count in items:
        if len(outcome) != width:
            raise InvalidArgument(f"outcome width {len(outcome)} does not match {width} clbits")
        for q in sifted:
            compared += count
            if bit(outcome, receiver_clbits[q]) != bit(sender_bits, q):
                mismatches += count
    if not sifted or compared == 0:
        verdict = "inconclusive"
    else:
        verdict = "detected" if mismatches else "clean"
    return SiftResult(sifted, key, compared, mismatches, verdict)


# --- verification dispatch --------------------------------------------------

DEFAULT_THRESHOLDS = {
    "deterministic": 0.99,
    "grover": 0.9,
    "walk": 0.5,
    "shor": 0.1,
    "qpe_inexact": 0.8,
}


@dataclass
class Verdict:
    algorithm: str
    verdict: str   # pass | fail | inconclusive
    score: float
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"algorithm": self.algorithm, "verdict": self.verdict, "score": self.score,
                "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _mass(hist: Histogram, keys: Iterable[str]) -> float:
    return sum(hist.counts.get(k, 0) for k in set(keys)) / hist.shots


def _threshold(alg: str, score: float, limit: float, **details: Any) -> Verdict:
    return Verdict(alg, "pass" if score >= limit else "fail", score, {"threshold": limit, **details})


def hellinger_fidelity(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    return sum(math.sqrt(p[k] * q.get(k, 0.0)) for k in p) ** 2


def verify(result: GenResult, histogram: Histogram,
           thresholds: Mapping[str, float] | None = None) -> Verdict:
    th = {**DEFAULT_THRESHOLDS, **(thresholds or {})}
    meta = result.metadata
    alg, d = meta.algorithm, meta.data
    get_algorithm(alg)
    det = th["deterministic"]
    hist = histogram
    classical = alg == "shor" and result.circuit is None and d.get("status") != "circuit"
    if not hist.counts and not classical:
        return Verdict(alg, "inconclusive", 0.0, {"reason": "empty histogram"})

    if alg == "dj":
        n = len(d["oracle_content"])
        p0 = _mass(hist, ["0" * n])
        score = p0 if d["oracle_type"] == "constant" else 1.0 - p0
        return _threshold(alg, score, det, oracle_type=d["oracle_type"])
    if alg in ("bv", "superdense", "teleport") or (alg in ("qft", "qpe") and d.get("expected")):
        expected = d.get("expected") or d.get("secret")
        return _threshold(alg, _mass(hist, [expected]), det, expected=expected)
    if alg == "qft":
        return Verdict(alg, "inconclusive", 0.0, {"reason": "no self-verifying initialization"})
    if alg == "qpe":
        t = meta.params["problem_size"]
        theta = d["theta"]
        good = []
        for k in hist.counts:
            diff = abs(int(k, 2) / 2 ** t - theta)
            if min(diff, 1 - diff) <= 2 ** -t + 1e-12:
                good.append(k)
        return _threshold(alg, _mass(hist, good), th["qpe_inexact"], theta=theta)
    if alg == "simon":
        s = d["secret"]
        ortho = [k for k in hist.counts
                 if sum(bit(k, i) & bit(s, i) for i in range(len(s))) % 2 == 0]
        score = _mass(hist, ortho)
        solved = simon_solve(list(hist.counts))
        want = s if "1" in s else "one-to-one"
        if solved == "insufficient":
            return Verdict(alg, "inconclusive", score, {"recovered": solved, "secret": s})
        ok = score >= det and solved == want
        return Verdict(alg, "pass" if ok else "fail", score, {"recovered": solved, "secret": s})
    if alg == "shor":
        if classical:
            fr = shor_classical_result(meta)
            return Verdict(alg, "pass", 1.0, fr.to_dict())
        t, N, a = d["counting_qubits"], d["N"], d["a"]
        found: set[int] = set()
        good = []
        for k in hist.counts:
            fr = shor_postprocess(int(k, 2), t, N, a)
            if fr.status == "success":
                good.append(k)
                found.update(fr.factors)
        return _threshold(alg, _mass(hist, good), th["shor"], factors=sorted(found), period=d["period"])
    if alg in ("grover", "walk"):
        return _threshold(alg, _mass(hist, d["marked"]), th[alg], marked=d["marked"])
    if alg == "counting":
        t, n, M = meta.params["problem_size"], d["searching_qubits"], d["M"]
        good = [k for k in hist.counts if round(counting_estimate(int(k, 2), t, n)) == M]
        mode = max(hist.counts, key=lambda k: (hist.counts[k], k))
        estimate = counting_estimate(int(mode, 2), t, n)
        # a t-bit register resolves the phase to 2^-t; misses inside that
        # error bound are a resolution limit rather than a wrong circuit
        bound = 2 ** n * 2 * math.pi / 2 ** t
        if round(estimate) == M:
            verdict = "pass"
        else:
            verdict = "inconclusive" if abs(estimate - M) <= bound else "fail"
        return Verdict(alg, verdict, _mass(hist, good),
                       {"M": M, "estimate": estimate, "mode": mode, "error_bound": bound})
    if alg == "qkd":
        sift = qkd_sift(meta, hist)
        details = {"sifted": len(sift.sifted_positions), "mismatch_rate": sift.mismatch_rate,
                   "detection": sift.verdict}
        score = 1.0 - sift.mismatch_rate
        if sift.verdict == "inconclusive":
            return Verdict(alg, "inconclusive", score, details)
        if d["attacker_bases"] is None:
            return Verdict(alg, "pass" if sift.verdict == "clean" else "fail", score, details)
        exposed = [q for q in sift.sifted_positions
                   if bit(d["attacker_bases"], q) != bit(d["sender_bases"], q)]
        if not exposed:
            return Verdict(alg, "inconclusive", score, {**details, "reason": "attacker bases hid"})
        return Verdict(alg, "pass" if sift.verdict == "detected" else "fail", score, details)
    # variational circuits have no single right answer; report agreement with
    # the exact distribution when it is cheap to compute
    circuit = result.circuit
    if circuit is None:
        circuit = get_algorithm(alg).generate(make_params(alg, **meta.params)).circuit
    if circuit.num_qubits > 10:
        return Verdict(alg, "inconclusive", 0.0, {"reason": "too wide for reference distribution"})
    exact = outcome_distribution(circuit)
    observed = {k: v / hist.shots for k, v in hist.counts.items()}
    return Verdict(alg, "inconclusive", hellinger_fidelity(exact, observed), {"metric": "hellinger"})
