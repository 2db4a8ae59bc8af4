"""Command-line front end.

Subcommands: helstrom, bounds, simulate, detect, concentrate, rate,
entropy, construct. Structured outputs are JSON; tabular plot data is
CSV; round streams are JSON-lines with one header line and one round
record per line. Every file-writing run also writes a manifest with a
config hash and SHA-256 digests of its inputs and outputs.

All randomness flows from the --seed root through labeled substreams
(the labels appear in the manifest), and parallel runs are canonicalized
by trial id, so identical (config, seed, version) give byte-identical
JSONL/CSV artifacts at any --threads setting.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .distinguish import bound_bracket, helstrom
from .errors import ConfigError, LoccLabError, ParseError
from .game import (DetectionConfig, GameTranscript, IIDStrategy,
                   default_detection_oracle, detect_catalyst,
                   hoeffding_bound, azuma_bound, memory_block_strategy,
                   min_rounds, run_game)
from .protocols import (concentration_distribution,
                        concentration_success_prob)
from .qmat import (DensityOperator, TensorLayout, operator_from_json,
                   operator_to_json, trace_norm)
from .states import (HidingPairSpec, PsiSpec, check_psi_conditions,
                     make_hiding_pair, make_max_entangled, make_psi,
                     make_rho_pair, psi_product_distance, psi_spectrum)

ARTIFACT_VERSION = "1"

_PARAM_KEYS = {
    "helstrom": {"state0", "state1", "family", "d"},
    "bounds": {"state0", "state1", "family", "d"},
    "simulate": {"protocol", "p", "d1", "lam", "d2", "n_block", "rounds",
                 "trials"},
    "detect": {"p_tau", "p_locc", "delta", "n", "trace_distance", "trials",
               "mode"},
    "concentrate": {"lam", "d2", "n", "mode", "samples", "target"},
    "rate": {"protocol", "p", "d1", "lam", "d2", "n_block", "r", "n_list",
             "trials"},
    "entropy": {"lam", "d2", "d1", "eps_prime"},
    "construct": {"family", "d", "d2", "lam", "dim"},
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One fully specified run: command, its parameters, and the
    plumbing knobs. Round-trips losslessly through to_dict/from_dict;
    unknown fields are rejected."""

    command: str
    seed: int = 0
    out: str | None = None
    threads: int = 1
    fmt: str = "json"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in _PARAM_KEYS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {self.threads}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"--format must be json or csv, got {self.fmt!r}")
        unknown = set(self.params) - _PARAM_KEYS[self.command]
        if unknown:
            raise ConfigError(f"unknown parameters for {self.command}: "
                              f"{sorted(unknown)}")

    def to_dict(self) -> dict:
        return {"command": self.command, "seed": self.seed, "out": self.out,
                "threads": self.threads, "format": self.fmt,
                "params": dict(sorted(self.params.items()))}

    def physics_dict(self) -> dict:
        """The experiment identity: everything that may influence artifact
        bytes. Plumbing (out path, thread count, stdout format) is
        excluded so identical experiments hash and serialize identically
        regardless of where or how parallel they ran."""
        return {"command": self.command, "seed": self.seed,
                "params": dict(sorted(self.params.items()))}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        allowed = {"command", "seed", "out", "threads", "format", "params"}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        if "command" not in data:
            raise ConfigError("config is missing the command field")
        return cls(command=data["command"], seed=int(data.get("seed", 0)),
                   out=data.get("out"), threads=int(data.get("threads", 1)),
                   fmt=data.get("format", "json"),
                   params=dict(data.get("params", {})))


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _g17(x: float) -> str:
    return format(float(x), ".17g")


# --- manifest ------------------------------------------------------------

def write_manifest(out_dir: Path, config: ExperimentConfig,
                   outputs: list[Path], inputs: list[Path] = (),
                   seed_streams: tuple[str, ...] = ()) -> Path:
    manifest = {
        "artifact_version": ARTIFACT_VERSION,
        "command": config.command,
        "config": config.to_dict(),
        "config_hash": hashlib.sha256(
            _canonical_json(config.physics_dict()).encode("utf-8")).hexdigest(),
        "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "seed_streams": list(seed_streams),
        "inputs": {str(p): _sha256_file(Path(p)) for p in inputs},
        "outputs": {p.name: _sha256_file(p) for p in outputs},
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")
    return path


def load_manifest(path, verify: bool = True) -> dict:
    """Re-load a run manifest, re-hashing the recorded artifacts.
    Digest mismatch (a tampered or regenerated artifact) raises
    ConfigError."""
    path = Path(path)
    manifest = json.loads(path.read_text(encoding="utf-8"))
    if verify:
        for name, digest in manifest.get("outputs", {}).items():
            target = path.parent / name
            if not target.exists():
                raise ConfigError(f"manifest output {name} is missing")
            if _sha256_file(target) != digest:
                raise ConfigError(f"digest mismatch for output {name}")
        for name, digest in manifest.get("inputs", {}).items():
            target = Path(name)
            if target.exists() and _sha256_file(target) != digest:
                raise ConfigError(f"digest mismatch for input {name}")
    return manifest


# --- state sources --------------------------------------------------------


def _require(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ConfigError(f"missing required parameters: {missing}")


def _load_pair(params: dict) -> tuple[DensityOperator, DensityOperator, list[Path]]:
    """Resolve (state0, state1) from files or a named family."""
    f0, f1 = params.get("state0"), params.get("state1")
    if (f0 is None) != (f1 is None):
        raise ConfigError("--state0 and --state1 must be given together")
    if f0 is not None:
        paths = [Path(f0), Path(f1)]
        states = []
        for p in paths:
            if not p.exists():
                raise ConfigError(f"state file {p} does not exist")
            states.append(operator_from_json(p.read_text(encoding="utf-8"),
                                             density=True))
        return states[0], states[1], paths
    family = params.get("family")
    d = int(params.get("d") or 2)
    if family == "werner":
        s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
        return s0, s1, []
    if family == "pure-vs-mixed":
        layout = TensorLayout((("A", d),))
        pure = np.zeros((d, d), dtype=np.complex128)
        pure[0, 0] = 1.0
        return (DensityOperator(layout, pure),
                DensityOperator(layout, np.eye(d) / d), [])
    raise ConfigError("give --state0/--state1 files or --family "
                      "{werner,pure-vs-mixed}")


def _make_strategy(params: dict):
    protocol = params.get("protocol")
    if protocol == "iid":
        _require(params, "p")
        return lambda: IIDStrategy(float(params["p"]))
    if protocol == "memory-block":
        _require(params, "lam", "d2", "n_block")
        d1 = int(params.get("d1") or 2)
        spec = PsiSpec(lam=float(params["lam"]), d2=int(params["d2"]))
        n_block = int(params["n_block"])
        memory_block_strategy(d1, spec, n_block)  # fail fast on bad specs
        return lambda: memory_block_strategy(d1, spec, n_block)
    raise ConfigError(f"--protocol must be iid or memory-block, got {protocol!r}")


# --- stream/summary writers -------------------------------------------------

def _write_run_files(out_dir: Path, config: ExperimentConfig, protocol_id: str,
                     n: int, transcripts: list[tuple[int, GameTranscript]],
                     guesses: dict[int, str] | None = None,
                     seed_streams: tuple[str, ...] = ()) -> dict:
    out_dir.mkdir(parents=True, exist_ok=True)
    jsonl = out_dir / "transcripts.jsonl"
    header = {"protocol_id": protocol_id, "seed": config.seed, "n": n,
              "config": config.physics_dict()}
    with open(jsonl, "w", encoding="utf-8", newline="") as f:
        f.write(_canonical_json(header) + "\n")
        for trial, tr in transcripts:
            for rec in tr.records:
                f.write(_canonical_json(
                    {"trial": trial, "j": rec.j, "Z": rec.Z, "Y": rec.Y,
                     "X": rec.X, "memory": rec.memory_descriptor}) + "\n")
    summary = out_dir / "summary.csv"
    with open(summary, "w", encoding="utf-8", newline="") as f:
        f.write("trial,n,S_n,rate,guess\n")
        for trial, tr in transcripts:
            guess = (guesses or {}).get(trial, "")
            f.write(f"{trial},{tr.n},{tr.final_score},"
                    f"{_g17(tr.final_score / tr.n)},{guess}\n")
    manifest = write_manifest(out_dir, config, [jsonl, summary],
                              seed_streams=seed_streams)
    return {"transcripts": str(jsonl), "summary": str(summary),
            "manifest": str(manifest)}


def _parallel_trials(config: ExperimentConfig, worker, trials: int) -> list:
    """Run worker(t) for t in range(trials); results sorted by trial id
    so thread scheduling cannot affect any output byte."""
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(worker, range(trials)))
    else:
        results = [worker(t) for t in range(trials)]
    return sorted(results, key=lambda item: item[0])


# --- subcommands ------------------------------------------------------------

def cmd_helstrom(config: ExperimentConfig) -> dict:
    rho0, rho1, inputs = _load_pair(config.params)
    td = trace_norm(rho0.entries - rho1.entries)
    report = {"trace_distance": td, "p_opt": helstrom(rho0, rho1)}
    if config.out:
        out_dir = Path(config.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        rp = out_dir / "report.json"
        rp.write_text(_canonical_json(report) + "\n", encoding="utf-8")
        write_manifest(out_dir, config, [rp], inputs=inputs)
    return report


def cmd_bounds(config: ExperimentConfig) -> dict:
    rho0, rho1, inputs = _load_pair(config.params)
    bracket = bound_bracket(rho0, rho1)
    report = {
        "locc_lower": bracket.locc_lower,
        "ppt_upper": bracket.ppt_upper,
        "helstrom": bracket.helstrom,
        "sdp_gap": bracket.sdp_gap,
        "witness": bracket.witness_id,
    }
    if config.out:
        out_dir = Path(config.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        rp = out_dir / "report.json"
        rp.write_text(_canonical_json(report) + "\n", encoding="utf-8")
        write_manifest(out_dir, config, [rp], inputs=inputs)
    return report


def cmd_entropy(config: ExperimentConfig) -> dict:
    params = config.params
    _require(params, "lam", "d2")
    spec = PsiSpec(lam=float(params["lam"]), d2=int(params["d2"]))
    eps_prime = params.get("eps_prime")
    if eps_prime is None:
        eps_prime = psi_product_distance(spec)
    d1 = int(params.get("d1") or 2)
    cond = check_psi_conditions(spec, d1, float(eps_prime))
    return {
        "entropy_bits": cond.entropy_bits,
        "trace_distance_to_product": cond.trace_distance,
        "near_product": cond.near_product,
        "entropy_excess": cond.entropy_excess,
        "d1": d1,
        "eps_prime": float(eps_prime),
    }


def cmd_construct(config: ExperimentConfig) -> dict:
    params = config.params
    if not config.out:
        raise ConfigError("construct requires --out DIRECTORY")
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    family = params.get("family")
    written: list[Path] = []

    def emit(name: str, op) -> None:
        path = out_dir / name
        path.write_text(operator_to_json(op) + "\n", encoding="utf-8")
        written.append(path)

    if family == "werner":
        d = int(params.get("d") or 2)
        s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
        emit("sigma0.json", s0)
        emit("sigma1.json", s1)
    elif family == "psi":
        _require(params, "lam", "d2")
        psi = make_psi(PsiSpec(lam=float(params["lam"]), d2=int(params["d2"])))
        emit("psi.json", psi.to_density())
    elif family == "rho-pair":
        _require(params, "lam", "d2")
        d = int(params.get("d") or 2)
        pair = make_hiding_pair(HidingPairSpec(d=d))
        psi = make_psi(PsiSpec(lam=float(params["lam"]), d2=int(params["d2"])))
        r0, r1 = make_rho_pair(pair, psi)
        emit("rho0.json", r0)
        emit("rho1.json", r1)
    elif family == "max-entangled":
        dim = int(params.get("dim") or 2)
        emit("phi.json", make_max_entangled(dim).to_density())
    else:
        raise ConfigError("construct --family must be one of werner, psi, "
                          "rho-pair, max-entangled")
    write_manifest(out_dir, config, written)
    return {"written": {p.name: _sha256_file(p) for p in written}}


def cmd_concentrate(config: ExperimentConfig) -> dict:
    params = config.params
    _require(params, "lam", "d2", "n")
    spec = PsiSpec(lam=float(params["lam"]), d2=int(params["d2"]))
    spectrum = psi_spectrum(spec)
    n = int(params["n"])
    mode = params.get("mode") or "auto"
    samples = int(params.get("samples") or 100_000)
    dist = concentration_distribution(spectrum, n, mode=mode, samples=samples,
                                      seed=config.seed)
    mean_bits = sum(o.probability * o.log2_dim for o in dist)
    report = {
        "n": n,
        "entropy_bits": spectrum.entropy_bits,
        "mean_log2_dim": mean_bits,
        "mean_log2_dim_per_copy": mean_bits / n,
        "outcomes": len(dist),
        "mode": mode,
    }
    target = params.get("target")
    if target is not None:
        est = concentration_success_prob(spectrum, n, float(target),
                                         mode=mode, samples=samples,
                                         seed=config.seed)
        report["target_log2_dim"] = float(target)
        report["success_prob"] = est.estimate
        report["success_ci"] = [est.ci_low, est.ci_high]
        report["success_exact"] = est.exact
    if config.out:
        out_dir = Path(config.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        table = out_dir / "distribution.csv"
        with open(table, "w", encoding="utf-8", newline="") as f:
            f.write("counts,log2_dim,probability\n")
            for o in dist:
                label = "|".join(str(c) for c in o.counts)
                f.write(f"{label},{_g17(o.log2_dim)},{_g17(o.probability)}\n")
        rp = out_dir / "report.json"
        rp.write_text(_canonical_json(report) + "\n", encoding="utf-8")
        write_manifest(out_dir, config, [table, rp],
                       seed_streams=("concentration-distribution",
                                     "concentration-success"))
    return report


def cmd_simulate(config: ExperimentConfig) -> dict:
    params = config.params
    factory = _make_strategy(params)
    rounds = int(params.get("rounds") or 100)
    trials = int(params.get("trials") or 1)
    if rounds < 1 or trials < 1:
        raise ConfigError("--rounds and --trials must be >= 1")

    def worker(t: int):
        return t, run_game(factory(), None, rounds, config.seed,
                           stream=("trial", t))

    transcripts = _parallel_trials(config, worker, trials)
    rates = [tr.success_fraction for _, tr in transcripts]
    report = {
        "protocol_id": transcripts[0][1].protocol_id,
        "trials": trials,
        "rounds": rounds,
        "mean_rate": float(np.mean(rates)),
        "min_rate": float(np.min(rates)),
        "max_rate": float(np.max(rates)),
    }
    if config.out:
        report["files"] = _write_run_files(
            Path(config.out), config, report["protocol_id"], rounds,
            transcripts, seed_streams=("trial.*.rounds", "trial.*.success",
                                       "trial.*.strategy"))
    return report


def cmd_detect(config: ExperimentConfig) -> dict:
    params = config.params
    p_tau = float(params.get("p_tau") if params.get("p_tau") is not None else 0.9)
    p_locc = float(params.get("p_locc") if params.get("p_locc") is not None else 0.75)
    delta = float(params.get("delta") if params.get("delta") is not None else 0.05)
    mode = params.get("mode") or "catalyst-threshold"
    trials = int(params.get("trials") or 100)
    n = params.get("n")
    if n is None:
        t = float(params.get("trace_distance")
                  if params.get("trace_distance") is not None else 1.0)
        n = min_rounds(delta, t)
    det_config = DetectionConfig(p_tau=p_tau, p_locc=p_locc, delta=delta,
                                 n=int(n), mode=mode)
    oracle = default_detection_oracle(det_config)

    def worker(t: int):
        world = "tau" if t % 2 == 0 else "gamma"
        result = detect_catalyst(det_config, oracle, config.seed, world,
                                 stream=("trial", t))
        return t, result

    results = _parallel_trials(config, worker, trials)
    per_world = {"tau": [0, 0], "gamma": [0, 0]}
    for _, res in results:
        per_world[res.world][1] += 1
        per_world[res.world][0] += int(res.correct)
    report = {
        "n": det_config.n,
        "mode": mode,
        "trials": trials,
        "p_corr_tau": per_world["tau"][0] / max(per_world["tau"][1], 1),
        "p_corr_gamma": per_world["gamma"][0] / max(per_world["gamma"][1], 1),
        "hoeffding": hoeffding_bound(det_config.n, delta),
        "azuma": azuma_bound(det_config.n, delta),
    }
    report["overall"] = 0.5 * (report["p_corr_tau"] + report["p_corr_gamma"])
    if config.out:
        transcripts = [(t, res.transcript) for t, res in results]
        guesses = {t: res.guess for t, res in results}
        report["files"] = _write_run_files(
            Path(config.out), config, "detect-" + mode, det_config.n,
            transcripts, guesses=guesses,
            seed_streams=("trial.*.detect.tau", "trial.*.detect.gamma"))
    return report


def cmd_rate(config: ExperimentConfig) -> dict:
    params = config.params
    factory = _make_strategy(params)
    _require(params, "r", "n_list")
    r = float(params["r"])
    if not 0.0 <= r <= 1.0:
        raise ConfigError(f"--r must lie in [0, 1], got {r}")
    try:
        n_list = [int(tok) for tok in str(params["n_list"]).split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"--n-list must be comma-separated integers: {exc}")
    if not n_list or any(n < 1 for n in n_list):
        raise ConfigError("--n-list must contain positive integers")
    trials = int(params.get("trials") or 100)

    all_transcripts: list[tuple[int, GameTranscript]] = []
    fracs = []
    trial_offset = 0
    for n in n_list:
        def worker(t: int, n=n, base=trial_offset):
            return base + t, run_game(factory(), None, n, config.seed,
                                      stream=("rate", n, t))
        batch = _parallel_trials(config, worker, trials)
        hits = sum(tr.final_score >= r * tr.n - 1e-9 for _, tr in batch)
        fracs.append(hits / trials)
        all_transcripts.extend(batch)
        trial_offset += trials
    report = {
        "r": r,
        "n_list": n_list,
        "success_frac": fracs,
        "trials": trials,
        "protocol_id": all_transcripts[0][1].protocol_id,
    }
    if config.out:
        report["files"] = _write_run_files(
            Path(config.out), config, report["protocol_id"],
            n_list[-1], all_transcripts,
            seed_streams=("rate.*.rounds", "rate.*.success",
                          "rate.*.strategy"))
    return report


_COMMANDS = {
    "helstrom": cmd_helstrom,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
    "detect": cmd_detect,
    "concentrate": cmd_concentrate,
    "rate": cmd_rate,
    "entropy": cmd_entropy,
    "construct": cmd_construct,
}


# --- argument parsing ----------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="root seed for all labeled substreams")
    common.add_argument("--out", type=str, default=None,
                        help="output directory for artifacts")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for trial loops")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"),
                        default="json", help="stdout report format")

    parser = argparse.ArgumentParser(
        prog="locclab",
        description="Numerical laboratory for LOCC state discrimination "
                    "with catalysts and reusable quantum memory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("helstrom", parents=[common],
                       help="optimal two-state discrimination probability")
    p.add_argument("--state0", type=str)
    p.add_argument("--state1", type=str)
    p.add_argument("--family", choices=("werner", "pure-vs-mixed"))
    p.add_argument("--d", type=int)

    p = sub.add_parser("bounds", parents=[common],
                       help="LOCC lower / PPT upper / global bound bracket")
    p.add_argument("--state0", type=str)
    p.add_argument("--state1", type=str)
    p.add_argument("--family", choices=("werner", "pure-vs-mixed"))
    p.add_argument("--d", type=int)

    p = sub.add_parser("simulate", parents=[common],
                       help="multi-round discrimination game")
    p.add_argument("--protocol", choices=("iid", "memory-block"), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--d1", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--d2", type=int)
    p.add_argument("--n-block", dest="n_block", type=int)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("detect", parents=[common],
                       help="catalyst/memory threshold detection")
    p.add_argument("--p-tau", dest="p_tau", type=float, default=0.9)
    p.add_argument("--p-locc", dest="p_locc", type=float, default=0.75)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--n", type=int)
    p.add_argument("--trace-distance", dest="trace_distance", type=float)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--mode", choices=("catalyst-threshold",
                                      "memory-threshold"),
                   default="catalyst-threshold")

    p = sub.add_parser("concentrate", parents=[common],
                       help="Schmidt-type concentration statistics")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "exact", "sample"),
                   default="auto")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--target", type=float)

    p = sub.add_parser("rate", parents=[common],
                       help="empirical achievable-rate estimation")
    p.add_argument("--protocol", choices=("iid", "memory-block"), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--d1", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--d2", type=int)
    p.add_argument("--n-block", dest="n_block", type=int)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--n-list", dest="n_list", type=str, required=True)
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("entropy", parents=[common],
                       help="marginal entropy and near-product report")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--d1", type=int)
    p.add_argument("--eps-prime", dest="eps_prime", type=float)

    p = sub.add_parser("construct", parents=[common],
                       help="write state files for a named family")
    p.add_argument("--family", choices=("werner", "psi", "rho-pair",
                                        "max-entangled"), required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--dim", type=int)

    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    reserved = {"command", "seed", "out", "threads", "fmt"}
    params = {k: v for k, v in vars(args).items()
              if k not in reserved and v is not None}
    return ExperimentConfig(command=args.command, seed=args.seed,
                            out=args.out, threads=args.threads,
                            fmt=args.fmt, params=params)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return _g17(value)
    if isinstance(value, (list, dict)):
        return "\"" + _canonical_json(value).replace("\"", "\"\"") + "\""
    return str(value)


def _render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        keys = sorted(report)
        return (",".join(keys) + "\n"
                + ",".join(_csv_cell(report[k]) for k in keys))
    return _canonical_json(report)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        report = _COMMANDS[config.command](config)
    except LoccLabError as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if isinstance(exc, ParseError) and exc.offset is not None:
            payload["error"]["offset"] = exc.offset
        print(_canonical_json(payload), file=sys.stderr)
        return 1
    print(_render(report, config.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
