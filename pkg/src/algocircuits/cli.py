"""Command-line interface: generate, simulate, stats, verify, dataset, plot-data."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .circuit import census
from .dataset import (CSV_COLUMNS, DatasetConfig, build_dataset, census_series,
                      master_seed_from_env)
from .errors import AlgoCircuitsError, InvalidArgument
from .generators import ALGORITHMS, AlgoMetadata, GenResult, generate
from .postprocess import verify
from .qasm import load_qasm, to_qasm
from .simulator import Histogram, run_statevector, sample_counts

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; keep control of the code
        raise _Usage(f"{self.prog}: error: {message}")


def _csv_list(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in _csv_list(text)]


def _size_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in _csv_list(text)]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="algocircuits", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="generate a circuit and write OpenQASM")
    g.add_argument("algorithm", choices=sorted(ALGORITHMS))
    g.add_argument("--problem-size", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", help="QASM file (default: stdout)")
    g.add_argument("--emit-metadata", help="write hidden generation data as JSON")
    g.add_argument("--native", action="store_true", help="keep native two-qubit gate names")
    g.add_argument("--compat", action="store_true", help="spell phase gates u1/cu1")
    g.add_argument("--secret", "--oracle-content", dest="oracle_content")
    g.add_argument("--oracle-type", dest="dj_oracle_type", choices=["constant", "balanced"])
    g.add_argument("--constant-value", dest="dj_constant_value", type=int, choices=[0, 1])
    g.add_argument("--init-value", type=int)
    g.add_argument("--forward", action="store_true", help="QFT: emit the forward transform")
    g.add_argument("--no-measure", action="store_true")
    g.add_argument("--no-init", action="store_true")
    g.add_argument("--theta", type=float)
    g.add_argument("--mode", dest="controlled_power_mode", choices=["repeat", "fused"])
    g.add_argument("-N", "--N", dest="N", type=int)
    g.add_argument("-a", "--a", dest="a", type=int)
    g.add_argument("--marked", type=_csv_list, help="comma-separated marked bitstrings")
    g.add_argument("--M", "--solutions", dest="M", type=int)
    g.add_argument("--iterations", type=int)
    g.add_argument("--searching-qubits", type=int)
    g.add_argument("--theta-qubits", type=int)
    g.add_argument("--no-interception", action="store_true")
    g.add_argument("--message")
    g.add_argument("--reps", type=int)
    g.add_argument("--gammas", type=_float_list)
    g.add_argument("--betas", type=_float_list)
    g.add_argument("--rotation-gates", type=_csv_list)
    g.add_argument("--entanglement", choices=["full", "linear", "circular"])
    g.add_argument("--fm-reps", type=int)
    g.add_argument("--vf-reps", type=int)
    g.add_argument("--features", type=_float_list)
    g.add_argument("--angles", type=_float_list)

    s = sub.add_parser("simulate", help="sample a QASM circuit; histogram JSON on stdout")
    s.add_argument("qasm")
    s.add_argument("--shots", type=int, default=1024)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--statevector", help="also write the final state (QGSV binary)")
    s.add_argument("--max-qubits", type=int, default=26)

    st = sub.add_parser("stats", help="census JSON for a QASM circuit")
    st.add_argument("qasm")

    v = sub.add_parser("verify", help="check a histogram against generation metadata")
    v.add_argument("metadata")
    v.add_argument("histogram")

    d = sub.add_parser("dataset", help="build a dataset from a JSON config")
    d.add_argument("--config")
    d.add_argument("--output-dir")
    d.add_argument("--seed", type=int, help="master seed (overrides QGEN_SEED and config)")
    d.add_argument("--algorithms", type=_csv_list)
    d.add_argument("--timing", action="store_true", help="record generation times")

    pd = sub.add_parser("plot-data", help="census-vs-size CSV for plotting")
    pd.add_argument("algorithms", nargs="*")
    pd.add_argument("--manifest", help="read census rows from a dataset manifest")
    pd.add_argument("--sizes", type=_size_range, default=list(range(2, 21)))
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--max-basis-gates", type=int, default=200_000)
    return p


_GEN_FLAGS = [
    "problem_size", "oracle_content", "dj_oracle_type", "dj_constant_value", "init_value", "theta",
    "controlled_power_mode", "N", "a", "marked", "M", "iterations", "searching_qubits",
    "theta_qubits", "message", "reps", "gammas", "betas", "rotation_gates", "entanglement",
    "fm_reps", "vf_reps", "features", "angles",
]


def _gen_kwargs(args: argparse.Namespace) -> dict[str, Any]:
    kwargs = {k: getattr(args, k) for k in _GEN_FLAGS if getattr(args, k) is not None}
    kwargs["seed"] = args.seed
    if args.algorithm == "qft":
        if args.forward:
            kwargs["inverse"] = False
        if args.no_init:
            kwargs["initialize"] = False
        if args.no_measure:
            kwargs["measure"] = False
    if args.algorithm == "qkd" and args.no_interception:
        kwargs["interception"] = False
    if args.algorithm == "shor":
        kwargs.pop("problem_size", None)
        if "N" not in kwargs:
            raise InvalidArgument("shor needs -N")
    elif "problem_size" not in kwargs:
        raise InvalidArgument(f"{args.algorithm} needs --problem-size")
    return kwargs


def _out(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_generate(args: argparse.Namespace) -> int:
    result = generate(args.algorithm, **_gen_kwargs(args))
    if args.emit_metadata:
        Path(args.emit_metadata).write_text(
            json.dumps(result.metadata.to_dict(), indent=2, sort_keys=True) + "\n")
    if result.circuit is None:
        print(json.dumps(result.metadata.to_dict(), sort_keys=True), file=sys.stderr)
        print("no circuit: instance resolved classically", file=sys.stderr)
        return EXIT_OK
    _out(to_qasm(result.circuit, decompose=not args.native, compat=args.compat), args.output)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    circuit = load_qasm(args.qasm)
    hist = sample_counts(circuit, args.shots, seed=args.seed, max_qubits=args.max_qubits)
    if args.statevector:
        run_statevector(circuit, args.max_qubits).save(args.statevector)
    print(hist.to_json())
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    print(json.dumps(census(load_qasm(args.qasm)).to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    meta = AlgoMetadata.from_dict(json.loads(Path(args.metadata).read_text()))
    hist = Histogram.from_dict(json.loads(Path(args.histogram).read_text()))
    print(verify(GenResult(None, meta), hist).to_json())
    return EXIT_OK


def cmd_dataset(args: argparse.Namespace) -> int:
    config = DatasetConfig.load(args.config) if args.config else DatasetConfig()
    config.master_seed = master_seed_from_env(config.master_seed)
    if args.seed is not None:
        config.master_seed = args.seed
    if args.output_dir:
        config.output_dir = args.output_dir
    if args.algorithms:
        config.algorithms = args.algorithms
        config.__post_init__()
    if args.timing:
        config.record_timing = True
    manifest = build_dataset(config)
    failed = sum(1 for e in manifest["entries"] if "error" in e)
    print(json.dumps({"manifest": str(Path(config.output_dir) / "manifest.json"),
                      "entries": len(manifest["entries"]), "failed": failed}))
    return EXIT_OK


def cmd_plot_data(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    if args.manifest:
        entries = json.loads(Path(args.manifest).read_text())["entries"]
        rows = [e for e in entries if e.get("census")
                and (not args.algorithms or e["algorithm"] in args.algorithms)]
    else:
        algs = args.algorithms or list(ALGORITHMS)
        for alg in algs:
            if alg not in ALGORITHMS:
                raise InvalidArgument(f"unknown algorithm {alg!r}")
        rows = []
        for alg in algs:
            sizes = args.sizes if alg != "shor" else [N for N in args.sizes if N % 2]
            rows += census_series(alg, sizes, seed=args.seed, max_basis_gates=args.max_basis_gates)
    for r in rows:
        c = r["census"]
        writer.writerow([r["algorithm"], r["size"], c["width"], c["depth"], c["single_qubit_gates"],
                         c["cnot_gates"], c["measure_gates"], "" if r.get("gen_ms") is None else r["gen_ms"]])
    return EXIT_OK


_COMMANDS = {"generate": cmd_generate, "simulate": cmd_simulate, "stats": cmd_stats,
             "verify": cmd_verify, "dataset": cmd_dataset, "plot-data": cmd_plot_data}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgoCircuitsError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
