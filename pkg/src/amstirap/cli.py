"""Command-line interface.

Subcommands
-----------
evolve         integrate the pulse sequence, write ``trajectory.csv``
cpt            tabulate the dark-state branch over a coupling-ratio range,
               write ``cpt.csv``
stability-map  scan dark-state stability over the (coupling ratio, detuning)
               plane, write ``stability_map.csv``
sweep          grid-scan conversion efficiency over detuning and pulse
               delay, write ``sweep.csv``
optimize       coarse-to-fine search for the best (detuning, delay) cell,
               write ``optimize.csv``

Every run also writes ``manifest.json`` into the output directory: a flat
record of every resolved parameter in internal units (rad/us, us).  Feeding
that manifest back through ``--config`` reproduces the run byte for byte.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, parse_config
from .cpt import chemical_potential, cpt_populations, generalized_delta
from .errors import AmstirapError, ConfigError
from .integrate import evolve
from .pulses import PulsePair, default_window
from .stability import map_scan
from .sweep import optimize, sweep_eta
from .writers import (
    fmt,
    write_cpt_csv,
    write_manifest,
    write_map_csv,
    write_sweep_csv,
    write_trajectory_csv,
)

__all__ = ["main", "build_parser"]

_OVERRIDE_FLAGS = (
    ("--omega0", "peak Rabi frequency, e.g. '2.1 MHz'"),
    ("--tau", "pulse width, e.g. '2380.95 us' or '2.38 ms'"),
    ("--t1", "free-bound pulse center, e.g. '3.77 tau'"),
    ("--t2", "bound-bound pulse center, e.g. '2.5 tau'"),
    ("--delta1", "one-photon detuning, e.g. '-1.4 gamma_b' or '-103.6 MHz'"),
    ("--gamma-b", "excited-state decay rate, e.g. '74 MHz'"),
    ("--reltol", "relative integration tolerance"),
    ("--abstol", "absolute integration tolerance"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amstirap",
        description=(
            "Mean-field simulator for two-color photoassociative population "
            "transfer in an atom-molecule condensate."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, summary in (
        ("evolve", "integrate the pulse sequence and record the trajectory"),
        ("cpt", "tabulate the dark-state branch over a coupling-ratio range"),
        ("stability-map", "scan dark-state stability over ratio and detuning"),
        ("sweep", "grid-scan conversion efficiency over detuning and delay"),
        ("optimize", "search for the best (detuning, delay) cell"),
    ):
        sub = subparsers.add_parser(name, help=summary, description=summary)
        sub.add_argument("--config", metavar="PATH", help="TOML or JSON configuration file")
        sub.add_argument(
            "--out", metavar="DIR", default=".", help="output directory (default: .)"
        )
        sub.add_argument(
            "--threads", type=int, metavar="N", help="max parallel cells for grid scans"
        )
        for flag, help_text in _OVERRIDE_FLAGS:
            sub.add_argument(flag, metavar="Q", help=help_text)
    return parser


def _flatten_options(section: str, options: dict) -> dict:
    return {f"{section}.{key}": value for key, value in options.items()}


def _run_evolve(config: RunConfig, outdir: Path) -> tuple[list[str], dict]:
    pulses = PulsePair.from_params(config.params)
    t_end = config.t_end if config.t_end is not None else default_window(pulses)[1]
    traj = evolve(
        config.params,
        pulses=pulses,
        t_end=t_end,
        reltol=config.reltol,
        abstol=config.abstol,
        samples=config.samples,
    )
    write_trajectory_csv(outdir / "trajectory.csv", traj)
    final = traj.final_state
    extra = {
        "t_end": t_end,
        "samples": config.samples,
        "result_eta": traj.eta,
        "result_pop_a": abs(final.a) ** 2,
        "result_pop_b": abs(final.b) ** 2,
        "result_norm": abs(final.a) ** 2 + 2 * abs(final.b) ** 2 + 2 * abs(final.g) ** 2,
        "result_rhs_evaluations": traj.stats.nfev,
    }
    print(f"evolve: eta = {traj.eta:.6f} at t = {t_end:.6g} us")
    return ["trajectory.csv"], extra


def _run_cpt(config: RunConfig, outdir: Path) -> tuple[list[str], dict]:
    ratios = config.cpt_ratios()
    pop_a = np.empty_like(ratios)
    pop_g = np.empty_like(ratios)
    delta = np.empty_like(ratios)
    mu_a = np.empty_like(ratios)
    for i, r in enumerate(ratios):
        pop_a[i], pop_g[i] = cpt_populations(float(r))
        delta[i] = generalized_delta(pop_a[i], pop_g[i], config.params)
        mu_a[i] = chemical_potential(pop_a[i], pop_g[i], config.params)
    write_cpt_csv(outdir / "cpt.csv", ratios, pop_a, pop_g, delta, mu_a)
    extra = {
        "cpt.ratio_min": float(ratios[0]),
        "cpt.ratio_max": float(ratios[-1]),
        "cpt.ratio_count": int(ratios.size),
    }
    print(f"cpt: {ratios.size} points over ratio in [{ratios[0]:g}, {ratios[-1]:g}]")
    return ["cpt.csv"], extra


def _run_map(config: RunConfig, outdir: Path) -> tuple[list[str], dict]:
    ratios, detunings = config.map_axes()
    options = config.map_options
    method = options.get("jacobian", "fd")
    include_gamma_b = bool(options.get("include_gamma_b", False))
    result = map_scan(
        config.params,
        ratios=ratios,
        detunings=detunings,
        method=method,
        include_gamma_b=include_gamma_b,
        threads=config.threads,
    )
    write_map_csv(outdir / "stability_map.csv", result)
    n_unstable = int(result.unstable.sum())
    extra = {
        "map.ratio_min": float(ratios[0]),
        "map.ratio_max": float(ratios[-1]),
        "map.ratio_count": int(ratios.size),
        "map.detuning_min": float(detunings[0]),
        "map.detuning_max": float(detunings[-1]),
        "map.detuning_count": int(detunings.size),
        "map.jacobian": method,
        "map.include_gamma_b": include_gamma_b,
        "result_unstable_cells": n_unstable,
        "result_max_growth_rate": float(result.growth.max()),
    }
    print(
        f"stability-map: {ratios.size}x{detunings.size} cells, "
        f"{n_unstable} unstable"
    )
    return ["stability_map.csv"], extra


def _run_sweep(config: RunConfig, outdir: Path) -> tuple[list[str], dict]:
    delta1_values, t1_values = config.sweep_axes()
    result = sweep_eta(
        config.params,
        delta1_values,
        t1_values,
        reltol=config.reltol,
        abstol=config.abstol,
        threads=config.threads,
    )
    write_sweep_csv(outdir / "sweep.csv", result)
    best_delta1, best_t1, best_eta = result.argmax
    extra = {
        "sweep.delta1_values": [float(v) for v in delta1_values],
        "sweep.t1_values": [float(v) for v in t1_values],
        "result_best_delta1": best_delta1,
        "result_best_t1": best_t1,
        "result_best_eta": best_eta,
    }
    print(
        f"sweep: {delta1_values.size}x{t1_values.size} cells, "
        f"best eta = {best_eta:.6f} at delta1 = {best_delta1:.6g}, t1 = {best_t1:.6g}"
    )
    return ["sweep.csv"], extra


def _run_optimize(config: RunConfig, outdir: Path) -> tuple[list[str], dict]:
    params = config.params
    options = config.optimize_options
    gb = params.gamma_b if params.gamma_b > 0 else 1.0
    delta1_bounds = (
        float(options.get("delta1_min", -3.0 * gb)),
        float(options.get("delta1_max", 1.0 * gb)),
    )
    delay_bounds = (
        float(options.get("delay_min", 0.5 * params.tau)),
        float(options.get("delay_max", 2.0 * params.tau)),
    )
    budget = int(options.get("budget", 100))
    coarse = int(options.get("coarse", 3))
    result = optimize(
        params,
        delta1_bounds,
        delay_bounds,
        budget=budget,
        coarse=coarse,
        reltol=config.reltol,
        abstol=config.abstol,
        threads=config.threads,
    )
    best_t1 = params.t2 + result.delay
    path = outdir / "optimize.csv"
    with path.open("w", newline="") as fh:
        fh.write("delta1,t1,eta,status\n")
        fh.write(f"{fmt(result.delta1)},{fmt(best_t1)},{fmt(result.eta)},ok\n")
    extra = {
        "optimize.delta1_min": delta1_bounds[0],
        "optimize.delta1_max": delta1_bounds[1],
        "optimize.delay_min": delay_bounds[0],
        "optimize.delay_max": delay_bounds[1],
        "optimize.budget": budget,
        "optimize.coarse": coarse,
        "result_best_delta1": result.delta1,
        "result_best_delay": result.delay,
        "result_best_t1": best_t1,
        "result_best_eta": result.eta,
        "result_evaluations": result.evaluations,
    }
    print(
        f"optimize: eta = {result.eta:.6f} at delta1 = {result.delta1:.6g}, "
        f"delay = {result.delay:.6g} ({result.evaluations} evaluations)"
    )
    return ["optimize.csv"], extra


_RUNNERS = {
    "evolve": _run_evolve,
    "cpt": _run_cpt,
    "stability-map": _run_map,
    "sweep": _run_sweep,
    "optimize": _run_optimize,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        overrides = {
            key: getattr(args, key)
            for key in (
                "omega0", "tau", "t1", "t2", "delta1", "gamma_b",
                "reltol", "abstol", "threads",
            )
        }
        config = parse_config(args.config, overrides=overrides)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        outputs, extra = _RUNNERS[args.subcommand](config, outdir)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (AmstirapError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    params = config.params
    manifest = {
        "tool": "amstirap",
        "version": __version__,
        "subcommand": args.subcommand,
        "wall_time_s": round(time.perf_counter() - started, 6),
        "outputs": outputs,
        "omega0": params.omega0,
        "tau": params.tau,
        "t1": params.t1,
        "t2": params.t2,
        "delta1": params.delta1,
        "gamma_b": params.gamma_b,
        "lambda_aa": params.lambda_aa,
        "lambda_ag": params.lambda_ag,
        "lambda_gg": params.lambda_gg,
        "reltol": config.reltol,
        "abstol": config.abstol,
    }
    if config.threads is not None:
        manifest["threads"] = config.threads
    manifest.update(extra)
    write_manifest(outdir / "manifest.json", manifest)
    return 0


if __name__ == "__main__":
    sys.exit(main())
