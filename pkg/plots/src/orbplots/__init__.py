"""Figure rendering for orbnet data files; presentation only."""

__version__ = "0.1.0"

from .io import SchemaError, SweepTable, read_edge_list, read_sweep
from .render import KINDS, FigureSpec, render
