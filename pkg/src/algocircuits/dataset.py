"""Batch dataset builder: sweeps every algorithm over problem sizes and writes
circuits, hidden metadata, histograms, statevectors and a manifest."""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import logging
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator

from . import __version__
from .circuit import census, has_mid_circuit_measure
from .decompose import basis_gate_count
from .errors import AlgoCircuitsError, InvalidArgument
from .generators import ALGORITHMS, generate
from .generators.fourier import screen_modulus
from .postprocess import verify
from .qasm import to_qasm
from .simulator import run_statevector, sample_counts

log = logging.getLogger(__name__)

CSV_COLUMNS = ["algorithm", "size", "width", "depth", "single_qubit", "cnot", "measure", "gen_ms"]


def default_shor_moduli(limit: int = 123) -> list[int]:
    return [N for N in range(9, limit + 1, 2) if screen_modulus(N)[0] == "quantum"]


def _default_ranges() -> dict[str, list[int]]:
    return {alg: [2, 45] for alg in ALGORITHMS if alg != "shor"}


@dataclass
class DatasetConfig:
    output_dir: str = "dataset"
    master_seed: int = 2024
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    size_ranges: dict[str, list[int]] = field(default_factory=_default_ranges)
    shor_moduli: list[int] = field(default_factory=default_shor_moduli)
    overrides: dict[str, dict[str, Any]] = field(default_factory=dict)
    shots: int = 4096
    max_width: int = 20
    statevector_max_qubits: int = 16
    max_basis_gates: int = 200_000
    replicates: int = 1
    record_timing: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise InvalidArgument(f"unknown algorithms in config: {sorted(unknown)}")
        for alg, rng in self.size_ranges.items():
            if len(rng) != 2 or rng[0] > rng[1]:
                raise InvalidArgument(f"size range for {alg} must be [lo, hi] with lo <= hi")
            if rng[0] < 2:
                raise InvalidArgument(f"minimum problem size is 2 (got {rng[0]} for {alg})")
        if self.shots < 1 or self.replicates < 1:
            raise InvalidArgument("shots and replicates must be positive")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> DatasetConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidArgument(f"unknown config keys: {sorted(unknown)}")
        base = cls()
        if "size_ranges" in data:
            data = {**data, "size_ranges": {**base.size_ranges, **data["size_ranges"]}}
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> DatasetConfig:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def derive_seed(master: int, algorithm: str, size: int, replicate: int = 0) -> int:
    digest = hashlib.sha256(f"{master}:{algorithm}:{size}:{replicate}".encode()).digest()
    return int.from_bytes(digest[:8], "little") >> 1


def sweep_kwargs(algorithm: str, size: int, seed: int,
                 overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    key = "N" if algorithm == "shor" else "problem_size"
    return {key: size, "seed": seed, **(overrides or {})}


def _sizes(config: DatasetConfig, alg: str) -> Iterator[int]:
    if alg == "shor":
        yield from config.shor_moduli
        return
    lo, hi = config.size_ranges.get(alg, [2, 45])
    for size in range(lo, hi + 1):
        if alg == "superdense" and size % 2:
            continue
        yield size


@dataclass
class _Planned:
    algorithm: str
    size: int
    replicate: int
    seed: int
    result: Any
    basis_gates: int
    gen_ms: float


def plan_entries(config: DatasetConfig) -> Iterator[_Planned]:
    """Generate circuits in sweep order, stopping each sweep at the first size
    whose width or basis-gate count exceeds the caps (Shor skips oversize moduli)."""
    for alg in config.algorithms:
        overrides = config.overrides.get(alg, {})
        stop = False
        for size in _sizes(config, alg):
            for rep in range(config.replicates):
                seed = derive_seed(config.master_seed, alg, size, rep)
                t0 = time.perf_counter()
                try:
                    result = generate(alg, **sweep_kwargs(alg, size, seed, overrides))
                except AlgoCircuitsError as exc:
                    log.warning("%s size %s: %s", alg, size, exc)
                    yield _Planned(alg, size, rep, seed, exc, 0, 0.0)
                    continue
                gen_ms = (time.perf_counter() - t0) * 1e3
                circuit = result.circuit
                if circuit is None:
                    continue
                count = basis_gate_count(circuit)
                if circuit.num_qubits > config.max_width or count > config.max_basis_gates:
                    if alg != "shor":
                        stop = True
                    break
                yield _Planned(alg, size, rep, seed, result, count, gen_ms)
            if stop:
                break


def _write(path: Path, data: str | bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data, encoding="utf-8", newline="\n")


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def build_entry(plan: _Planned, config: DatasetConfig, root: Path) -> dict[str, Any]:
    alg = plan.algorithm
    info = ALGORITHMS[alg]
    entry: dict[str, Any] = {
        "algorithm": alg, "category": info.category, "complexity_rating": info.rating,
        "size": plan.size, "replicate": plan.replicate, "seed": plan.seed,
    }
    if isinstance(plan.result, Exception):
        entry["error"] = f"{type(plan.result).__name__}: {plan.result}"
        return entry
    result = plan.result
    circuit = result.circuit
    stem = f"{alg}/{alg}-{plan.size:03d}-r{plan.replicate}"
    entry["params"] = result.metadata.params
    entry["basis_gates"] = plan.basis_gates
    try:
        _write(root / f"{stem}.qasm", to_qasm(circuit))
        _write(root / f"{stem}.meta.json", _dumps(result.metadata.to_dict()))
        entry["qasm"] = f"{stem}.qasm"
        entry["metadata"] = f"{stem}.meta.json"
        entry["census"] = census(circuit).to_dict()
        entry["gen_ms"] = round(plan.gen_ms, 3) if config.record_timing else None
        hist = sample_counts(circuit, config.shots, seed=plan.seed)
        _write(root / f"{stem}.hist.json", hist.to_json() + "\n")
        entry["histogram"] = f"{stem}.hist.json"
        verdict = verify(result, hist)
        entry["verdict"] = {"verdict": verdict.verdict, "score": round(verdict.score, 12)}
        entry["statevector"] = None
        if circuit.num_qubits <= config.statevector_max_qubits and not has_mid_circuit_measure(circuit):
            _write(root / f"{stem}.qgsv", run_statevector(circuit).to_bytes())
            entry["statevector"] = f"{stem}.qgsv"
    except AlgoCircuitsError as exc:
        entry["error"] = f"{type(exc).__name__}: {exc}"
    return entry


def census_csv(entries: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in entries:
        c = e.get("census")
        if not c:
            continue
        gen = "" if e.get("gen_ms") is None else e["gen_ms"]
        writer.writerow([e["algorithm"], e["size"], c["width"], c["depth"],
                         c["single_qubit_gates"], c["cnot_gates"], c["measure_gates"], gen])
    return buf.getvalue()


def build_dataset(config: DatasetConfig) -> dict[str, Any]:
    """Build the dataset under ``config.output_dir`` and return the manifest."""
    root = Path(config.output_dir)
    try:
        root.mkdir(parents=True, exist_ok=True)
        probe = root / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory {root} is not writable: {exc}") from exc
    entries = []
    for plan in plan_entries(config):
        log.info("building %s size %s", plan.algorithm, plan.size)
        entries.append(build_entry(plan, config, root))
    order = {alg: i for i, alg in enumerate(ALGORITHMS)}
    entries.sort(key=lambda e: (order[e["algorithm"]], e["size"], e["replicate"]))
    manifest = {
        "tool": "algocircuits",
        "version": __version__,
        "master_seed": config.master_seed,
        "ratings_provisional": True,
        "config": {k: v for k, v in config.to_dict().items() if k != "output_dir"},
        "entries": entries,
    }
    _write(root / "manifest.json", _dumps(manifest))
    _write(root / "census.csv", census_csv(entries))
    return manifest


def census_series(algorithm: str, sizes: list[int], seed: int = 0,
                  max_basis_gates: int | None = None, **overrides: Any) -> list[dict[str, Any]]:
    """Census rows for a size sweep without simulation (plot-data backend)."""
    rows = []
    for size in sizes:
        if algorithm == "superdense" and size % 2:
            continue
        result = generate(algorithm, **sweep_kwargs(algorithm, size, derive_seed(seed, algorithm, size),
                                                    overrides))
        if result.circuit is None:
            continue
        if max_basis_gates is not None and basis_gate_count(result.circuit) > max_basis_gates:
            break
        c = census(result.circuit)
        rows.append({"algorithm": algorithm, "size": size, "census": c.to_dict(), "gen_ms": None})
    return rows


def master_seed_from_env(default: int) -> int:
    raw = os.environ.get("QGEN_SEED")
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidArgument(f"QGEN_SEED must be an integer, got {raw!r}") from None


def linear_r2(xs: list[float], ys: list[float]) -> float:
    """Coefficient of determination of the least-squares line through (xs, ys)."""
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    syy = sum((y - my) ** 2 for y in ys)
    if syy == 0:
        return 1.0
    if sxx == 0:
        return 0.0
    slope = sxy / sxx
    resid = sum((y - my - slope * (x - mx)) ** 2 for x, y in zip(xs, ys))
    return 1.0 - resid / syy if not math.isclose(syy, 0.0) else 1.0
