"""Publication-style figure renderer for the simulator's CSV outputs.

Reads the documented ``trajectory.csv``, ``stability_map.csv``, and
``sweep.csv`` formats — nothing else couples this package to the
simulator — and renders deterministic PNG figures suitable for snapshot
testing.
"""

from .figures import render, render_map, render_sweep, render_trajectory
from .schema import (
    KINDS,
    REQUIRED_COLUMNS,
    FigureSpec,
    SchemaError,
    load_table,
    load_tables,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "REQUIRED_COLUMNS",
    "FigureSpec",
    "SchemaError",
    "__version__",
    "load_table",
    "load_tables",
    "render",
    "render_map",
    "render_sweep",
    "render_trajectory",
]
