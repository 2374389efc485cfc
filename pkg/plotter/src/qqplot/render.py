"""CSV to 2x2 panel figure: Negativity, MIN, UIN and CHSH with the classical
bound marked at 2."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# Panel order is fixed; the CHSH panel carries the classical-bound line.
PANEL_COLUMNS = ("negativity", "min", "uin", "chsh_max")
PANEL_TITLES = ("Negativity", "MIN", "UIN", "Bell (CHSH)")
CLASSICAL_BOUND = 2.0


class MissingColumn(Exception):
    """A required column is absent from the CSV header."""


class EmptyData(Exception):
    """The CSV carries no data rows."""


@dataclass(frozen=True)
class FigureRecipe:
    """What to plot: the CSV, the series column, the x axis and the output path.

    axis_column defaults to the swept quantity named in the CSV's own `axis`
    column.
    """

    csv_path: str
    series_column: str
    out_path: str
    axis_column: Optional[str] = None


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        rows = list(reader)
    return header, rows


def render(recipe: FigureRecipe):
    """Render the 2x2 panel figure and save it to recipe.out_path.

    One curve per distinct series value, panels in the fixed order, a dashed
    reference line at 2 in the CHSH panel.  Returns the matplotlib Figure.
    """
    header, rows = _read_rows(recipe.csv_path)
    if not rows:
        raise EmptyData(f"{recipe.csv_path} has no data rows")

    axis_column = recipe.axis_column or rows[0].get("axis", "")
    required = [recipe.series_column, axis_column, *PANEL_COLUMNS]
    missing = [c for c in required if c not in header]
    if missing:
        raise MissingColumn(f"column(s) {missing} not in CSV header")

    series_values = []
    for row in rows:
        if row[recipe.series_column] not in series_values:
            series_values.append(row[recipe.series_column])

    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    for panel, title, ax in zip(PANEL_COLUMNS, PANEL_TITLES, axes.ravel()):
        for sv in series_values:
            xs, ys = [], []
            for row in rows:
                if row[recipe.series_column] == sv and row[panel] != "":
                    xs.append(float(row[axis_column]))
                    ys.append(float(row[panel]))
            ax.plot(xs, ys, label=f"{recipe.series_column} = {sv}")
        if panel == "chsh_max":
            ax.axhline(CLASSICAL_BOUND, color="k", linestyle="--", linewidth=1)
        ax.set_title(title)
        ax.set_ylabel(panel)
        ax.set_xlabel(axis_column)
    axes[0, 0].legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(recipe.out_path, dpi=150)
    return fig
