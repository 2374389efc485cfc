"""Command line: plot <csv> --series <column> --out <png-path>."""

from __future__ import annotations

import argparse
import sys

from .render import EmptyData, FigureRecipe, MissingColumn, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qqcorr-plot",
        description="Render a 2x2 correlation-measure figure from a sweep CSV.")
    parser.add_argument("csv", help="sweep CSV produced by the qqcorr CLI")
    parser.add_argument("--series", required=True, help="column that labels the curves")
    parser.add_argument("--out", required=True, help="output image path (png)")
    parser.add_argument("--axis", default=None,
                        help="x-axis column (default: the CSV's own axis echo)")
    args = parser.parse_args(argv)
    recipe = FigureRecipe(csv_path=args.csv, series_column=args.series,
                          out_path=args.out, axis_column=args.axis)
    try:
        render(recipe)
    except (MissingColumn, EmptyData, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
