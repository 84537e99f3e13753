"""CSV table schemas shared with the simulator CLI, and validated loading.

The renderer is deliberately decoupled from the simulator: the only contract
between the two packages is the set of column names below, which mirror the
CSV files the simulator writes (``trajectory.csv``, ``stability_map.csv``,
``sweep.csv``).  Everything here is read-only; input files are never touched.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "KINDS",
    "REQUIRED_COLUMNS",
    "FigureSpec",
    "SchemaError",
    "load_table",
    "load_tables",
]

#: Figure kinds the renderer knows how to draw.
KINDS = ("trajectory", "map", "sweep")

#: Columns each figure kind needs.  Extra columns in an input file are
#: ignored; column order does not matter.
REQUIRED_COLUMNS = {
    "trajectory": (
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
    ),
    "map": (
        "omega2_over_omega1",
        "delta1_over_omega1",
        "max_growth_rate",
        "unstable",
    ),
    "sweep": ("delta1", "t1", "eta", "status"),
}

# Columns that hold text rather than numbers.
_TEXT_COLUMNS = frozenset({"status"})


class SchemaError(ValueError):
    """Raised when an input CSV or figure request is malformed."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render.

    ``inputs`` is one or more CSV paths (only the sweep kind accepts more
    than one; extra files are concatenated row-wise before grouping).
    ``delta1_scale`` divides the sweep detuning axis, so the caller can plot
    the detuning in whatever unit it likes (e.g. pass the peak coupling
    strength or the decay rate) together with a matching ``delta1_label``.
    """

    kind: str
    inputs: tuple[Path, ...]
    out: Path
    dpi: int = 150
    delta1_scale: float = 1.0
    delta1_label: str = r"$\Delta_1$ (rad/$\mu$s)"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SchemaError(
                f"unknown figure kind {self.kind!r}; expected one of "
                + ", ".join(KINDS)
            )
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")
        if self.kind != "sweep" and len(self.inputs) != 1:
            raise SchemaError(
                f"{self.kind} figures take exactly one input CSV "
                f"({len(self.inputs)} given)"
            )
        if self.dpi <= 0:
            raise SchemaError(f"dpi must be positive, got {self.dpi}")
        if not self.delta1_scale > 0:
            raise SchemaError(
                f"delta1 scale must be positive, got {self.delta1_scale}"
            )


def load_table(path: str | Path, kind: str) -> dict[str, np.ndarray]:
    """Read one CSV file and return its required columns as arrays.

    Numeric columns come back as float arrays, text columns (``status``) as
    string arrays.  Raises :class:`SchemaError` listing every missing column,
    and rejects header-only files (``no data rows``), ragged rows, and
    non-numeric cells in numeric columns.
    """
    if kind not in KINDS:
        raise SchemaError(
            f"unknown figure kind {kind!r}; expected one of " + ", ".join(KINDS)
        )
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}") from exc
    if header is None:
        raise SchemaError(f"{path}: empty file (no header row)")

    required = REQUIRED_COLUMNS[kind]
    missing = [name for name in required if name not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns: {', '.join(missing)}")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    for lineno, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"{path}: line {lineno} has {len(row)} fields, "
                f"expected {len(header)}"
            )

    table: dict[str, np.ndarray] = {}
    for name in required:
        col = header.index(name)
        cells = [row[col] for row in rows]
        if name in _TEXT_COLUMNS:
            table[name] = np.array(cells, dtype=str)
        else:
            try:
                table[name] = np.array([float(cell) for cell in cells])
            except ValueError:
                bad = next(c for c in cells if not _is_float(c))
                raise SchemaError(
                    f"{path}: column {name!r} has non-numeric value {bad!r}"
                ) from None
    return table


def load_tables(paths: tuple[Path, ...], kind: str) -> dict[str, np.ndarray]:
    """Load one or more CSVs of the same kind and concatenate their rows."""
    tables = [load_table(p, kind) for p in paths]
    if len(tables) == 1:
        return tables[0]
    return {
        name: np.concatenate([t[name] for t in tables])
        for name in REQUIRED_COLUMNS[kind]
    }


def _is_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True
