#!/usr/bin/env python3
"""Generate the CSV tables for all six figure presets into out/.

Usage: python scripts/run_figures.py [--steps N] [--jobs N] [--outdir DIR]
Feed the CSVs to the plotter package to render the panel figures.
"""

import argparse
import pathlib
import time

from qqcorr.sweep import figure_preset, format_csv, run_sweep

PRESETS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--outdir", default="out")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in PRESETS:
        t0 = time.perf_counter()
        rows = run_sweep(figure_preset(name, steps=args.steps), jobs=args.jobs)
        path = outdir / f"{name}.csv"
        path.write_text(format_csv(rows))
        print(f"{path}: {len(rows)} rows in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
