"""Golden-file summary statistics for the figure presets.

A preset summary pins, per series value: the maximum of every measure over
the grid, the sudden-death point of negativity along the axis and (for the
temperature sweeps) the CHSH classical-bound crossing, each computed with
find_threshold where a bracket exists.  Shared by the acceptance suite and
the regeneration script.
"""

import json
from dataclasses import replace

import numpy as np

from qqcorr.errors import NoBracket
from qqcorr.sweep import SweepSpec, ThresholdQuery, figure_preset, find_threshold, run_sweep

GOLDEN_TOL = 1e-8


def _series_threshold(spec: SweepSpec, series_value, measure, level):
    """Threshold along the preset axis with the series override baked in."""
    base = spec.base
    temperature = spec.temperature
    if spec.series_name == "T":
        temperature = float(series_value)
    elif spec.series_name is not None:
        base = base.with_value(spec.series_name, series_value)
    single = SweepSpec(base=base, temperature=temperature, axis=spec.axis,
                       start=spec.start, stop=spec.stop, steps=spec.steps,
                       measures=(measure,))
    try:
        return find_threshold(ThresholdQuery(spec=single, measure=measure, level=level))
    except NoBracket:
        return None


def series_rows(rows, series_value):
    return [r for r in rows if r.series_value == series_value]


def measure_columns(rows):
    return {
        "negativity": np.array([r.report.negativity for r in rows]),
        "min": np.array([r.report.min_value for r in rows]),
        "uin": np.array([r.report.uin_value for r in rows]),
        "chsh": np.array([r.report.chsh_max for r in rows]),
    }


def compute_preset_summary(name, rows=None):
    """Summary statistics of one figure preset (computes the sweep if needed)."""
    spec = figure_preset(name)
    if rows is None:
        rows = run_sweep(spec)
    summary = {
        "preset": name,
        "axis": spec.axis,
        "series_name": spec.series_name,
        "range": [spec.start, spec.stop],
        "steps": spec.steps,
        "series": [],
    }
    for sv in spec.series_values:
        cols = measure_columns(series_rows(rows, sv))
        entry = {
            "value": sv,
            "max": {m: float(v.max()) for m, v in cols.items()},
            "negativity_death": _series_threshold(spec, sv, "negativity", 0.0),
        }
        if spec.axis == "T":
            entry["chsh_crossing"] = _series_threshold(spec, sv, "chsh", 2.0)
        summary["series"].append(entry)
    return summary


def compare_summaries(golden, fresh, tol=GOLDEN_TOL):
    """List of human-readable mismatches between two summaries (empty if equal)."""
    problems = []

    def close(a, b):
        if a is None or b is None:
            return a is None and b is None
        return abs(a - b) <= tol

    for key in ("preset", "axis", "series_name", "steps"):
        if golden[key] != fresh[key]:
            problems.append(f"{key}: {golden[key]!r} != {fresh[key]!r}")
    for g, f in zip(golden["series"], fresh["series"]):
        tag = f"series {g['value']}"
        for m in g["max"]:
            if not close(g["max"][m], f["max"][m]):
                problems.append(f"{tag} max[{m}]: {g['max'][m]} != {f['max'][m]}")
        for key in ("negativity_death", "chsh_crossing"):
            if key in g and not close(g.get(key), f.get(key)):
                problems.append(f"{tag} {key}: {g.get(key)} != {f.get(key)}")
    if len(golden["series"]) != len(fresh["series"]):
        problems.append("series count differs")
    return problems


def load_golden(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dump_golden(summary, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=1)
        fh.write("\n")
