"""Figure layouts for the three CSV kinds, and the top-level render entry.

All figures are drawn on the non-interactive Agg canvas with a pinned
``Software`` PNG tag and no timestamps, so the same inputs always produce
byte-identical files — that is what makes snapshot testing possible.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure

from .schema import FigureSpec, SchemaError, load_tables

__all__ = ["render", "render_trajectory", "render_map", "render_sweep"]

#: Pinned PNG text chunk; the default would embed the library version.
_PNG_METADATA = {"Software": "figrender"}

_STABLE_COLOR = "#f2f2f2"
_UNSTABLE_COLOR = "#a40000"


def render(spec: FigureSpec) -> Path:
    """Render one figure described by ``spec`` and write it as a PNG.

    Returns the output path.  Raises :class:`SchemaError` when the inputs
    fail validation or the output is not a ``.png`` path.
    """
    out = Path(spec.out)
    if out.suffix.lower() != ".png":
        raise SchemaError(
            f"{out}: only .png output is supported (keeps renders"
            " byte-reproducible)"
        )
    table = load_tables(spec.inputs, spec.kind)
    fig = _FIGURES[spec.kind](table, spec)
    fig.savefig(out, dpi=spec.dpi, format="png", metadata=_PNG_METADATA)
    return out


def render_trajectory(table: dict[str, np.ndarray], spec: FigureSpec) -> Figure:
    """Populations vs time with the dark-state overlays and a detuning inset.

    Solid curves are the simulated populations; dotted curves are the
    instantaneous dark-state populations the system would occupy if it
    followed the pulses perfectly.  The inset shows the two-photon detuning
    schedule over the same window.
    """
    fig = Figure(figsize=(6.4, 4.4))
    ax = fig.add_axes((0.105, 0.115, 0.865, 0.845))
    x = table["t_over_tau"]
    ax.plot(x, table["pop_a"], color="tab:blue", lw=1.6, label=r"atoms $|a|^2$")
    ax.plot(
        x,
        table["pop_b"],
        color="tab:red",
        lw=1.6,
        label=r"excited molecules $|b|^2$",
    )
    ax.plot(
        x,
        table["pop_g"],
        color="tab:green",
        lw=1.6,
        label=r"stable molecules $|g|^2$",
    )
    ax.plot(
        x,
        table["cpt_pop_a"],
        color="tab:blue",
        ls=":",
        lw=1.3,
        label=r"dark state $|a^{(0)}|^2$",
    )
    ax.plot(
        x,
        table["cpt_pop_g"],
        color="tab:green",
        ls=":",
        lw=1.3,
        label=r"dark state $|g^{(0)}|^2$",
    )
    ax.set_xlabel(r"$t/\tau$")
    ax.set_ylabel("population")
    ax.set_xlim(x[0], x[-1])
    ax.legend(loc="center left", fontsize=8, framealpha=1.0)

    inset = ax.inset_axes((0.62, 0.56, 0.35, 0.38))
    inset.plot(x, table["delta"], color="tab:purple", lw=1.2)
    inset.axhline(0.0, color="0.6", lw=0.6)
    inset.set_xlabel(r"$t/\tau$", fontsize=8)
    inset.set_ylabel(r"$\delta$ (rad/$\mu$s)", fontsize=8)
    inset.tick_params(labelsize=7)
    return fig


def render_map(table: dict[str, np.ndarray], spec: FigureSpec) -> Figure:
    """Binary-shaded instability map on the coupling-ratio/detuning plane.

    The long-format rows are reassembled into the full grid; the file must
    contain exactly one row per (ratio, detuning) cell.
    """
    ratios = np.unique(table["omega2_over_omega1"])
    dets = np.unique(table["delta1_over_omega1"])
    n_rows = table["unstable"].size
    if ratios.size * dets.size != n_rows:
        raise SchemaError(
            f"map rows do not form a complete grid: {n_rows} rows vs "
            f"{ratios.size} x {dets.size} distinct axis values"
        )
    i = np.searchsorted(ratios, table["omega2_over_omega1"])
    j = np.searchsorted(dets, table["delta1_over_omega1"])
    count = np.zeros((ratios.size, dets.size), dtype=int)
    np.add.at(count, (i, j), 1)
    if (count != 1).any():
        raise SchemaError(
            "map rows do not form a complete grid: some (ratio, detuning) "
            "cells are duplicated or missing"
        )
    grid = np.zeros((ratios.size, dets.size))
    grid[i, j] = table["unstable"]

    fig = Figure(figsize=(6.0, 4.4))
    ax = fig.add_axes((0.105, 0.115, 0.72, 0.845))
    mesh = ax.pcolormesh(
        _edges(dets),
        _edges(ratios),
        grid,
        cmap=ListedColormap([_STABLE_COLOR, _UNSTABLE_COLOR]),
        vmin=0.0,
        vmax=1.0,
    )
    cbar = fig.colorbar(mesh, ax=ax, ticks=(0.25, 0.75), fraction=0.08)
    cbar.ax.set_yticklabels(("stable", "unstable"), fontsize=8)
    ax.axvline(0.0, color="0.55", lw=0.7)
    ax.set_xlabel(r"$\Delta_1/\Omega_1$")
    ax.set_ylabel(r"$\Omega_2/\Omega_1$")
    return fig


def render_sweep(table: dict[str, np.ndarray], spec: FigureSpec) -> Figure:
    """Conversion efficiency vs detuning, one curve per pulse delay.

    Failed cells (``status != ok``) break the curve instead of plotting.
    """
    fig = Figure(figsize=(6.4, 4.4))
    ax = fig.add_axes((0.105, 0.115, 0.865, 0.845))
    eta = np.where(table["status"] == "ok", table["eta"], np.nan)
    for t1 in np.unique(table["t1"]):
        sel = table["t1"] == t1
        x = table["delta1"][sel] / spec.delta1_scale
        order = np.argsort(x, kind="stable")
        ax.plot(
            x[order],
            eta[sel][order],
            marker="o",
            ms=3.0,
            lw=1.4,
            label=rf"$t_1 = {t1:g}\ \mu s$",
        )
    ax.set_xlabel(spec.delta1_label)
    ax.set_ylabel(r"conversion efficiency $\eta$")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize=8, framealpha=1.0)
    return fig


_FIGURES = {
    "trajectory": render_trajectory,
    "map": render_map,
    "sweep": render_sweep,
}


def _edges(centers: np.ndarray) -> np.ndarray:
    """Cell edges for ``pcolormesh`` from sorted cell-center coordinates."""
    centers = np.asarray(centers, dtype=float)
    if centers.size == 1:
        half = 0.5 * abs(centers[0]) if centers[0] != 0.0 else 0.5
        return np.array([centers[0] - half, centers[0] + half])
    mid = 0.5 * (centers[1:] + centers[:-1])
    first = 2.0 * centers[0] - mid[0]
    last = 2.0 * centers[-1] - mid[-1]
    return np.concatenate(([first], mid, [last]))
