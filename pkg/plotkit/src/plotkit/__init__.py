"""Figure rendering for the sphere-state experiment CSVs.

Reads only the public CSV contract of the ``lagfid`` command-line tool ('#'
comment lines, snake_case header, one row per grid point) and draws the
standard scatter-plus-theoretical-overlay figures: data as markers, the
predictor as a line.
"""

__version__ = "0.1.0"

from .render import FigureSpec, FIGURES, load_csv, render
