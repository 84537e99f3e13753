"""CSV and manifest emission.

Every numeric field is serialized with 12 significant digits via a fixed
format, so identical results produce byte-identical files regardless of
thread count or platform; each output directory also receives a
``manifest.json`` holding every resolved parameter of the run (flat
key/value, internal units), which can be fed back as a configuration file
to reproduce the run exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .cpt import cpt_populations
from .integrate import Trajectory
from .pulses import coupling_ratio
from .stability import StabilityMap
from .sweep import CELL_OK, SweepResult

__all__ = [
    "fmt",
    "write_trajectory_csv",
    "write_map_csv",
    "write_sweep_csv",
    "write_cpt_csv",
    "write_manifest",
]

TRAJECTORY_COLUMNS = [
    "t",
    "t_over_tau",
    "re_a",
    "im_a",
    "re_b",
    "im_b",
    "re_g",
    "im_g",
    "pop_a",
    "pop_b",
    "pop_g",
    "norm",
    "omega1",
    "omega2",
    "delta",
    "cpt_pop_a",
    "cpt_pop_g",
]
MAP_COLUMNS = ["omega2_over_omega1", "delta1_over_omega1", "max_growth_rate", "unstable"]
SWEEP_COLUMNS = ["delta1", "t1", "eta", "status"]
CPT_COLUMNS = ["ratio", "pop_a", "pop_g", "delta", "mu_a"]


def fmt(x: float) -> str:
    """Serialize one number with 12 significant digits."""
    return format(float(x), ".12g")


def write_trajectory_csv(path: str | Path, traj: Trajectory) -> Path:
    path = Path(path)
    tau = traj.pulses.tau
    pop_a, pop_b, pop_g = traj.pop_a, traj.pop_b, traj.pop_g
    norm = traj.norm
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_COLUMNS)
        for i, t in enumerate(traj.t):
            cp_a, cp_g = cpt_populations(coupling_ratio(traj.pulses, float(t)))
            row = [
                t,
                t / tau,
                traj.y[i, 0],
                traj.y[i, 1],
                traj.y[i, 2],
                traj.y[i, 3],
                traj.y[i, 4],
                traj.y[i, 5],
                pop_a[i],
                pop_b[i],
                pop_g[i],
                norm[i],
                traj.omega1[i],
                traj.omega2[i],
                traj.delta[i],
                cp_a,
                cp_g,
            ]
            writer.writerow([fmt(v) for v in row])
    return path


def write_map_csv(path: str | Path, result: StabilityMap) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MAP_COLUMNS)
        for i, ratio in enumerate(result.ratios):
            for j, det in enumerate(result.detunings):
                writer.writerow(
                    [
                        fmt(ratio),
                        fmt(det),
                        fmt(result.growth[i, j]),
                        "1" if result.unstable[i, j] else "0",
                    ]
                )
    return path


def write_sweep_csv(path: str | Path, result: SweepResult) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for i, delta1 in enumerate(result.delta1_values):
            for j, t1 in enumerate(result.t1_values):
                ok = result.status[i, j] == CELL_OK
                writer.writerow(
                    [
                        fmt(delta1),
                        fmt(t1),
                        fmt(result.eta[i, j]) if ok else "nan",
                        "ok" if ok else "failed",
                    ]
                )
    return path


def write_cpt_csv(
    path: str | Path,
    ratios: np.ndarray,
    pop_a: np.ndarray,
    pop_g: np.ndarray,
    delta: np.ndarray,
    mu_a: np.ndarray,
) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CPT_COLUMNS)
        for row in zip(ratios, pop_a, pop_g, delta, mu_a):
            writer.writerow([fmt(v) for v in row])
    return path


def write_manifest(path: str | Path, entries: dict) -> Path:
    """Write the flat run manifest; values must be JSON-serializable."""
    path = Path(path)
    clean = {}
    for key, value in entries.items():
        if isinstance(value, (np.floating, np.integer)):
            value = value.item()
        clean[key] = value
    path.write_text(json.dumps(clean, indent=2, sort_keys=True) + "\n")
    return path
