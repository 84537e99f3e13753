"""Command-line renderer: CSV outputs of the simulator in, PNG figures out.

Usage::

    render --kind {trajectory|map|sweep} --in PATH [--in PATH ...] --out PATH

Exit codes: 0 on success, 2 when the arguments or an input file fail
validation (missing file, missing columns, no data rows, malformed cells).
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .figures import render
from .schema import KINDS, FigureSpec, SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a publication-style PNG figure from simulator"
        " CSV output.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--kind",
        required=True,
        choices=KINDS,
        help="figure type to draw",
    )
    parser.add_argument(
        "--in",
        dest="inputs",
        metavar="PATH",
        action="append",
        required=True,
        help="input CSV; may be repeated for the sweep kind to concatenate"
        " several files",
    )
    parser.add_argument(
        "--out", required=True, metavar="PATH", help="output PNG path"
    )
    parser.add_argument(
        "--dpi", type=int, default=150, help="raster resolution (default 150)"
    )
    parser.add_argument(
        "--delta1-scale",
        type=float,
        default=1.0,
        metavar="VALUE",
        help="divide the sweep detuning axis by VALUE (e.g. the peak"
        " coupling or the decay rate) before plotting",
    )
    parser.add_argument(
        "--delta1-label",
        default=None,
        metavar="TEXT",
        help="x-axis label for the sweep figure (pair with --delta1-scale)",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec_kwargs = dict(
            kind=args.kind,
            inputs=tuple(Path(p) for p in args.inputs),
            out=Path(args.out),
            dpi=args.dpi,
            delta1_scale=args.delta1_scale,
        )
        if args.delta1_label is not None:
            spec_kwargs["delta1_label"] = args.delta1_label
        render(FigureSpec(**spec_kwargs))
    except SchemaError as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
