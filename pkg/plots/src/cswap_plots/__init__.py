"""Deterministic figure rendering for cswap-lab experiment CSVs."""

from .render import render, render_all  # noqa: F401
from .specs import FIGURE_SPECS, FigureSpec  # noqa: F401

__version__ = "0.1.0"
