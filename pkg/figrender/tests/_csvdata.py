"""Synthetic schema-valid CSV data for the renderer tests.

The numbers are made up — smooth curves and a small grid — because the
renderer only contracts on column names and shapes, never on physical
values.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

TRAJECTORY_HEADER = [
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
MAP_HEADER = [
    "omega2_over_omega1",
    "delta1_over_omega1",
    "max_growth_rate",
    "unstable",
]
SWEEP_HEADER = ["delta1", "t1", "eta", "status"]


def write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def trajectory_rows(n: int = 80) -> list[list]:
    rows = []
    for i in range(n):
        t = 2.5 * i
        x = t / 50.0
        theta = 0.5 * math.pi / (1.0 + math.exp(-(x - 2.0) * 2.0))
        pop_a = math.cos(theta) ** 2
        pop_g = 0.5 * math.sin(theta) ** 2
        pop_b = 0.02 * math.exp(-((x - 2.0) ** 2))
        norm = pop_a + 2.0 * (pop_b + pop_g)
        rows.append(
            [
                t,
                x,
                math.sqrt(pop_a),
                0.0,
                math.sqrt(pop_b),
                0.0,
                -math.sqrt(pop_g),
                0.0,
                pop_a,
                pop_b,
                pop_g,
                norm,
                2.0 * math.exp(-((x - 3.0) ** 2)),
                2.0 * math.exp(-((x - 2.0) ** 2)),
                0.07 - 0.05 * x,
                pop_a + 0.01,
                pop_g + 0.01,
            ]
        )
    return rows


def map_rows() -> list[list]:
    ratios = [0.5, 1.0, 1.5, 2.0]
    dets = [-1.0, -0.5, 0.0, 0.5, 1.0]
    rows = []
    for r in ratios:
        for d in dets:
            growing = abs(d - 0.25 * r) < 0.3
            rows.append([r, d, 3e-3 if growing else 1e-9, 1 if growing else 0])
    return rows


def sweep_rows() -> list[list]:
    rows = []
    for t1 in (30.0, 37.7):
        for k, delta1 in enumerate((-3.0, -2.0, -1.0, 0.0, 1.0)):
            if t1 == 30.0 and k == 4:
                rows.append([delta1, t1, "nan", "failed"])
            else:
                eta = 0.9 * math.exp(-((delta1 + 1.0) ** 2) / 4.0)
                rows.append([delta1, t1, eta, "ok"])
    return rows
