"""Command line interface.

Subcommands: ``generate`` (signal CSV dump), ``simulate`` (single reservoir
run), ``lyapunov`` (stability sweep), ``memory`` (delay reconstruction
curves), ``tradeoff`` (memory/nonlinearity grid or fixed-parameter spot
comparison). Every run writes its CSV artifacts plus a manifest recording
argv, master seed and output hashes; repeating a command with the same seed
reproduces every file byte for byte.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from . import dynamics, experiments, signals
from .io_utils import write_csv, write_manifest
from .reservoir import (
    ReservoirConfig,
    build_reservoir,
    drive,
    load_reservoir,
    save_reservoir,
)

SUBCOMMANDS = ("generate", "simulate", "lyapunov", "memory", "tradeoff")


@dataclass(eq=False)
class CommandSpec:
    subcommand: str
    flags: dict
    output_dir: Path
    argv: list


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _spot(text: str) -> tuple[float, int]:
    try:
        nu, tau = text.split(":")
        return float(nu), int(tau)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NU:TAU, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esn",
        description="Hyper-sphere reservoir experiments: signals, simulation, "
                    "stability and memory protocols.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", type=Path, default=None,
                        help="output directory (default: $ESN_OUTPUT_DIR or ./results)")
    common.add_argument("--seed", type=int, default=1234, help="master seed")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for sweeps (default: serial)")
    common.add_argument("--paper-scale", action="store_true",
                        help="full-size protocol (N=1000, 5000/2000, 20 runs)")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("generate", parents=[common], help="dump a benchmark signal as CSV")
    p.add_argument("--signal", required=True, choices=experiments.BENCHMARKS)
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--dt", type=float, default=None, help="integrator step (ODE signals)")
    p.add_argument("--subsample", type=int, default=5, help="keep every k-th sample (lorenz)")
    p.add_argument("--exponent", type=float, default=1.0,
                   help="delayed-feedback denominator exponent (1 or 10)")
    p.add_argument("--santa-fe-path", type=Path, default=None)

    p = sub.add_parser("simulate", parents=[common], help="drive one reservoir and record the trajectory")
    p.add_argument("--family", choices=dynamics.FAMILIES, default="spherical")
    p.add_argument("--n", type=int, default=200, help="reservoir size")
    p.add_argument("--sr", type=float, default=None, help="spectral radius (family preset default)")
    p.add_argument("--input-scaling", type=float, default=None)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--sphere-radius", type=float, default=1.0)
    p.add_argument("--signal", choices=experiments.BENCHMARKS, default="white_noise")
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--washout", type=int, default=100)
    p.add_argument("--santa-fe-path", type=Path, default=None)
    p.add_argument("--reservoir", type=Path, default=None, help="load a pinned reservoir file")
    p.add_argument("--save-reservoir", type=Path, default=None, help="write the reservoir file")
    p.add_argument("--dump-states", action="store_true", help="also write the full state matrix")

    p = sub.add_parser("lyapunov", parents=[common], help="Lyapunov sweep over spectral radii")
    p.add_argument("--family", choices=dynamics.FAMILIES, default="spherical")
    p.add_argument("--sr", type=_float_list, default=[0.2, 1.0, 5.0, 15.0, 50.0],
                   help="comma-separated spectral radii")
    p.add_argument("--n", type=int, default=100, help="reservoir size")
    p.add_argument("--steps", type=int, default=5000)
    p.add_argument("--seeds", type=int, default=10, help="realizations per radius")
    p.add_argument("--transient", type=int, default=500)
    p.add_argument("--n-exponents", type=int, default=0,
                   help="leading QR exponents to track (0 = full spectrum)")

    p = sub.add_parser("memory", parents=[common], help="delay-reconstruction accuracy curves")
    p.add_argument("--benchmark", choices=experiments.BENCHMARKS, default="white_noise")
    p.add_argument("--family", choices=dynamics.FAMILIES + ("all",), default="all")
    p.add_argument("--tau-max", type=int, default=100)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="reservoir size")
    p.add_argument("--train-len", type=int, default=None)
    p.add_argument("--test-len", type=int, default=None)
    p.add_argument("--washout", type=int, default=100)
    p.add_argument("--ridge-lambda", type=float, default=0.0)
    p.add_argument("--center", action="store_true", help="also center signals to zero mean")
    p.add_argument("--mg-exponent", type=float, default=10.0)
    p.add_argument("--santa-fe-path", type=Path, default=None)

    p = sub.add_parser("tradeoff", parents=[common], help="memory/nonlinearity trade-off grid")
    p.add_argument("--family", choices=dynamics.FAMILIES, default="spherical")
    p.add_argument("--nus", type=_float_list, default=[0.5, 1.0, 1.5, 2.0, 2.5])
    p.add_argument("--taus", type=_int_list, default=[0, 5, 10, 15, 20])
    p.add_argument("--sr-min", type=float, default=None)
    p.add_argument("--sr-max", type=float, default=None)
    p.add_argument("--scaling-min", type=float, default=0.01)
    p.add_argument("--scaling-max", type=float, default=2.0)
    p.add_argument("--grid-points", type=int, default=20)
    p.add_argument("--train-len", type=int, default=500)
    p.add_argument("--test-len", type=int, default=200)
    p.add_argument("--washout", type=int, default=100)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--ridge-scale", type=float, default=1e-8)
    p.add_argument("--n", type=int, default=None, help="reservoir size")
    p.add_argument("--spot", type=_spot, default=None, metavar="NU:TAU",
                   help="skip the grid; compare families at fixed hyper-parameters")

    return parser


def parse_and_validate(argv) -> CommandSpec:
    """Parse argv into a typed CommandSpec; exits with code 2 on bad usage."""
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = vars(args).copy()
    sub = flags.pop("subcommand")
    out_dir = flags.pop("out_dir")
    if out_dir is None:
        out_dir = Path(os.environ.get("ESN_OUTPUT_DIR", "results"))

    paper = flags.get("paper_scale", False)
    scale = experiments.PAPER_SCALE if paper else experiments.DESK_SCALE
    if sub == "memory":
        flags["runs"] = flags["runs"] if flags["runs"] is not None else scale["n_runs"]
        flags["n"] = flags["n"] if flags["n"] is not None else scale["n_neurons"]
        flags["train_len"] = flags["train_len"] if flags["train_len"] is not None else scale["train_len"]
        flags["test_len"] = flags["test_len"] if flags["test_len"] is not None else scale["test_len"]
        if flags["washout"] < flags["tau_max"]:
            parser.error(f"--washout ({flags['washout']}) must be >= --tau-max ({flags['tau_max']})")
        if flags["benchmark"] == "santa_fe" and flags["santa_fe_path"] is None:
            parser.error("--benchmark santa_fe requires --santa-fe-path")
    elif sub == "tradeoff":
        flags["n"] = flags["n"] if flags["n"] is not None else scale["n_neurons"]
        lo, hi = experiments.TRADEOFF_SR_RANGES[flags["family"]]
        flags["sr_min"] = flags["sr_min"] if flags["sr_min"] is not None else lo
        flags["sr_max"] = flags["sr_max"] if flags["sr_max"] is not None else hi
        if not flags["sr_max"] > flags["sr_min"] > 0:
            parser.error(f"need 0 < --sr-min < --sr-max, got {flags['sr_min']}..{flags['sr_max']}")
        if not flags["scaling_max"] > flags["scaling_min"] > 0:
            parser.error("need 0 < --scaling-min < --scaling-max")
        if flags["grid_points"] < 1:
            parser.error("--grid-points must be >= 1")
        if flags["spot"] is None and max(flags["taus"]) > flags["washout"]:
            parser.error("--washout must cover the largest --taus entry")
    elif sub == "generate":
        if flags["length"] < 1:
            parser.error("--length must be >= 1")
        if flags["signal"] == "santa_fe" and flags["santa_fe_path"] is None:
            parser.error("--signal santa_fe requires --santa-fe-path")
    elif sub == "simulate":
        if flags["washout"] >= flags["length"]:
            parser.error("--length must exceed --washout")
        if flags["signal"] == "santa_fe" and flags["santa_fe_path"] is None:
            parser.error("--signal santa_fe requires --santa-fe-path")
    elif sub == "lyapunov":
        if flags["steps"] <= flags["transient"]:
            parser.error("--steps must exceed --transient")
        if any(sr <= 0 for sr in flags["sr"]):
            parser.error("--sr values must be positive")
        if flags["seeds"] < 1:
            parser.error("--seeds must be >= 1")

    return CommandSpec(subcommand=sub, flags=flags, output_dir=out_dir,
                       argv=list(argv))


def execute(spec: CommandSpec) -> int:
    """Run a validated command; returns the process exit code."""
    handler = {
        "generate": _run_generate,
        "simulate": _run_simulate,
        "lyapunov": _run_lyapunov,
        "memory": _run_memory,
        "tradeoff": _run_tradeoff,
    }[spec.subcommand]
    try:
        handler(spec)
    except (ValueError, RuntimeError, OSError, np.linalg.LinAlgError) as exc:
        print(f"esn {spec.subcommand}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def _manifest(spec: CommandSpec, outputs, inputs=None):
    write_manifest(spec.output_dir / "manifest.json", spec.subcommand, spec.argv,
                   spec.flags.get("seed"), spec.flags, outputs, inputs=inputs)


def _run_generate(spec: CommandSpec):
    f = spec.flags
    name = f["signal"]
    kwargs = {}
    if name == "white_noise":
        series = signals.white_noise(f["length"], f["seed"])
    elif name == "mso":
        series = signals.mso(f["length"])
    elif name == "lorenz":
        if f["dt"] is not None:
            kwargs["dt"] = f["dt"]
        series = signals.lorenz_x(f["length"], subsample=f["subsample"],
                                  seed_perturbation=f["seed"], **kwargs)
    elif name == "mackey_glass":
        if f["dt"] is not None:
            kwargs["dt"] = f["dt"]
        series = signals.mackey_glass(f["length"], exponent=f["exponent"], **kwargs)
    else:
        series = signals.load_santa_fe(f["santa_fe_path"])
    rows = [(i, float(v)) for i, v in enumerate(series.channel)]
    out = write_csv(spec.output_dir / f"{name}.csv", ["index", "value"], rows)
    inputs = [f["santa_fe_path"]] if name == "santa_fe" else None
    _manifest(spec, [out], inputs=inputs)


def _run_simulate(spec: CommandSpec):
    f = spec.flags
    if f["reservoir"] is not None:
        reservoir = load_reservoir(f["reservoir"])
    else:
        preset = experiments.FAMILY_PRESETS[f["family"]]
        sr = f["sr"] if f["sr"] is not None else preset["spectral_radius"]
        scaling = f["input_scaling"] if f["input_scaling"] is not None else preset["input_scaling"]
        config = ReservoirConfig(n_neurons=f["n"], n_inputs=1, spectral_radius=sr,
                                 input_scaling=scaling, activation=f["family"],
                                 sphere_radius=f["sphere_radius"], density=f["density"],
                                 seed=experiments.child_seed(f["seed"], "reservoir"))
        reservoir = build_reservoir(config)
    series = experiments.make_benchmark_series(
        f["signal"], f["length"], experiments.child_seed(f["seed"], "signal"),
        santa_fe_path=f["santa_fe_path"])
    traj = drive(reservoir, series.values, washout=f["washout"])
    rows = [(k + 1, float(traj.norm_factors[k]), float(np.linalg.norm(traj.states[k])))
            for k in range(len(traj.norm_factors))]
    outputs = [write_csv(spec.output_dir / "trajectory.csv",
                         ["k", "norm_factor", "state_norm"], rows)]
    if f["dump_states"]:
        header = [f"x{i}" for i in range(reservoir.n_neurons)]
        outputs.append(write_csv(spec.output_dir / "states.csv", header,
                                 [tuple(row) for row in traj.states]))
    if f["save_reservoir"] is not None:
        save_reservoir(reservoir, f["save_reservoir"])
        outputs.append(f["save_reservoir"])
    inputs = [f["santa_fe_path"]] if f["signal"] == "santa_fe" else None
    _manifest(spec, outputs, inputs=inputs)


def _run_lyapunov(spec: CommandSpec):
    f = spec.flags
    n_exp = None if f["n_exponents"] == 0 else f["n_exponents"]
    reports = experiments.lle_sweep_experiment(
        f["sr"], f["n"], f["seeds"], f["steps"], family=f["family"],
        n_exponents=n_exp, transient=f["transient"], master_seed=f["seed"],
        max_workers=f["threads"])
    outputs = [
        write_csv(spec.output_dir / "lyapunov.csv", experiments.LYAPUNOV_HEADER,
                  experiments.lyapunov_rows(reports, f["family"])),
        write_csv(spec.output_dir / "lyapunov_spectrum.csv", experiments.CURVE_HEADER,
                  experiments.spectrum_rows(reports, f["family"])),
        write_csv(spec.output_dir / "lyapunov_summary.csv",
                  experiments.LYAPUNOV_SUMMARY_HEADER,
                  experiments.lyapunov_summary_rows(reports, f["family"])),
    ]
    _manifest(spec, outputs)


def _run_memory(spec: CommandSpec):
    f = spec.flags
    families = dynamics.FAMILIES if f["family"] == "all" else (f["family"],)
    rows = []
    curve_rows = []
    for family in families:
        result = experiments.delay_memory_experiment(
            f["benchmark"], family, tau_max=f["tau_max"], n_runs=f["runs"],
            n_neurons=f["n"], train_len=f["train_len"], test_len=f["test_len"],
            washout=f["washout"], ridge_lambda=f["ridge_lambda"],
            master_seed=f["seed"], santa_fe_path=f["santa_fe_path"],
            center=f["center"])
        rows.extend(experiments.delay_memory_rows(result))
        for curve in experiments.theoretical_curves_for(result):
            if curve.family == family:
                sr = result.config.spectral_radius
                curve_rows.extend(experiments.memory_curve_rows(
                    curve, sr, f["seed"], f["n"], f["train_len"]))
    outputs = [write_csv(spec.output_dir / "memory.csv",
                         experiments.DELAY_MEMORY_HEADER, rows)]
    if curve_rows:
        outputs.append(write_csv(spec.output_dir / "memory_theory.csv",
                                 experiments.CURVE_HEADER, curve_rows))
    inputs = [f["santa_fe_path"]] if f["benchmark"] == "santa_fe" else None
    _manifest(spec, outputs, inputs=inputs)


def _run_tradeoff(spec: CommandSpec):
    f = spec.flags
    if f["spot"] is not None:
        nu, tau = f["spot"]
        spot = experiments.spot_prediction_experiment(
            nu, tau, n_neurons=f["n"], train_len=f["train_len"],
            test_len=f["test_len"], washout=f["washout"],
            ridge_scale=f["ridge_scale"], master_seed=f["seed"])
        spot_rows = [(fam, spot.nu, spot.tau, spot.gamma_mean[fam], spot.gamma_std[fam])
                     for fam in spot.families]
        outputs = [
            write_csv(spec.output_dir / "predictions.csv",
                      experiments.PREDICTIONS_HEADER, experiments.prediction_rows(spot)),
            write_csv(spec.output_dir / "spot.csv",
                      ["family", "nu", "tau", "gamma_mean", "gamma_std"], spot_rows),
        ]
        _manifest(spec, outputs)
        return
    plan = experiments.SweepPlan(
        sr_values=tuple(np.linspace(f["sr_min"], f["sr_max"], f["grid_points"])),
        scaling_values=tuple(np.linspace(f["scaling_min"], f["scaling_max"], f["grid_points"])),
        n_seeds=f["seeds"], train_len=f["train_len"], test_len=f["test_len"],
        washout=f["washout"])
    result = experiments.tradeoff_grid_experiment(
        f["family"], f["nus"], f["taus"], plan, n_neurons=f["n"],
        ridge_scale=f["ridge_scale"], master_seed=f["seed"],
        max_workers=f["threads"])
    outputs = [write_csv(spec.output_dir / "tradeoff.csv",
                         experiments.TRADEOFF_HEADER, experiments.tradeoff_rows(result))]
    _manifest(spec, outputs)


def main(argv=None) -> int:
    spec = parse_and_validate(sys.argv[1:] if argv is None else list(argv))
    return execute(spec)


if __name__ == "__main__":
    sys.exit(main())
