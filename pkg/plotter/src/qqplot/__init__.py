"""Render four-panel correlation figures from qqcorr sweep CSV files.

Consumes only the public CSV contract (fixed header with an axis echo, a
series column and the four measure columns); never imports the engine.
"""

from .render import EmptyData, FigureRecipe, MissingColumn, PANEL_COLUMNS, render

__version__ = "0.1.0"
