#!/usr/bin/env python3
"""Recompute the golden summary files for the figure presets.

Writes tests/golden/<preset>.json for fig1..fig6 and refreshes the fig1 CSV
fixture consumed by the plotter package.  Run from the repository root after
any change that legitimately moves the pinned numbers.
"""

import pathlib
import sys
import time

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from qqcorr.sweep import figure_preset, format_csv, run_sweep  # noqa: E402

from goldens_util import compute_preset_summary, dump_golden  # noqa: E402

PRESETS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


def main():
    golden_dir = ROOT / "tests" / "golden"
    golden_dir.mkdir(parents=True, exist_ok=True)
    for name in PRESETS:
        t0 = time.perf_counter()
        spec = figure_preset(name)
        rows = run_sweep(spec)
        summary = compute_preset_summary(name, rows)
        dump_golden(summary, golden_dir / f"{name}.json")
        if name == "fig1":
            csv_text = format_csv(rows)
            (golden_dir / "fig1.csv").write_text(csv_text)
            fixture = ROOT / "plotter" / "tests" / "data"
            if fixture.parent.parent.exists():
                fixture.mkdir(parents=True, exist_ok=True)
                (fixture / "fig1.csv").write_text(csv_text)
        print(f"{name}: {len(rows)} rows in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
