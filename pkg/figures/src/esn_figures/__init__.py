"""Figures for the hyper-sphere reservoir experiments, from CSV logs only."""

__version__ = "0.1.0"

from .loading import FIGURE_KINDS, REQUIRED_COLUMNS, SchemaError, load_rows
from .render import FigureJob, build_figure, render
