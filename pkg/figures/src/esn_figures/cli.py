"""Command line wrapper: render --kind KIND --in results/*.csv --out fig.svg"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .loading import FIGURE_KINDS, SchemaError
from .render import FigureJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render publication-style figures from experiment CSV logs.")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--in", dest="inputs", required=True, nargs="+", type=Path,
                        metavar="CSV", help="input CSV files")
    parser.add_argument("--out", required=True, type=Path,
                        help="output figure path (.svg or .png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = FigureJob(input_csvs=args.inputs, figure_kind=args.kind,
                    output_path=args.out)
    try:
        render(job)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
