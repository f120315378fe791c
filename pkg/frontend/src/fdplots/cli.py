"""``fdmimo-plot render``: turn simulator CSVs into a figure file."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .render import PlotSpec, RenderError, parse_selectors, render_figure


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdmimo-plot",
        description="Render power-vs-M figures from fdmimo CSV output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    render = sub.add_parser("render", help="render one figure from CSV input")
    render.add_argument(
        "--csv", nargs="+", required=True, help="one or more power CSV files"
    )
    render.add_argument(
        "--select",
        default="",
        help="series selectors, e.g. link=downlink,term=si_total,scheme=zf",
    )
    render.add_argument("--out", required=True, help="output image path (e.g. .png)")
    render.add_argument(
        "--crossings",
        help="crossings.csv for M* markers (default: sibling of the first CSV)",
    )
    render.add_argument(
        "--no-noise-floor",
        action="store_true",
        help="suppress the 0 dB reference line",
    )
    render.add_argument(
        "--slope-guide", action="store_true", help="draw a 1/M slope guide"
    )
    render.add_argument("--title", help="figure title")
    render.add_argument("--dpi", type=int, default=120)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        spec = PlotSpec(
            csv_paths=tuple(args.csv),
            selectors=parse_selectors(args.select),
            out_path=args.out,
            noise_floor_db=None if args.no_noise_floor else 0.0,
            slope_guide=args.slope_guide,
            crossings_path=args.crossings,
            title=args.title,
            dpi=args.dpi,
        )
        render_figure(spec)
        return 0
    except RenderError as exc:
        print(f"fdmimo-plot: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"fdmimo-plot: I/O error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:  # pragma: no cover - console-script shim
    sys.exit(main())
