"""Sequential fast methods for the Eikonal equation on N-dimensional grids."""
from .eikonal import causal_solve, solve_eikonal, solve_n_dims
from .grid import (CellState, Grid, GridFormatError, coords_of, flat_index, read_grid, read_time,
                   write_grid, write_time)
from .solvers import (ALL_SOLVERS, EXACT_SOLVERS, SolverKind, SolverParams, SolveStats,
                      get_sweep_dirs, solve)

__version__ = "0.1.0"

__all__ = [
    "ALL_SOLVERS", "EXACT_SOLVERS", "CellState", "Grid", "GridFormatError", "SolveStats",
    "SolverKind", "SolverParams", "causal_solve", "coords_of", "flat_index", "get_sweep_dirs",
    "read_grid", "read_time", "solve", "solve_eikonal", "solve_n_dims", "write_grid",
    "write_time",
]
