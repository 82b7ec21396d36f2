from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..eikonal import make_kernel
from ..grid import CellState, Grid

INF = math.inf
UNKNOWN = int(CellState.UNKNOWN)
NARROW = int(CellState.NARROW)
FROZEN = int(CellState.FROZEN)


@dataclass
class SolveStats:
    """Instrumentation filled in by a propagation run."""

    solves: int = 0
    sweeps: int = 0
    changing_sweeps: int = 0
    frozen: int = 0
    iterations: int = 0
    pop_keys: list | None = None
    extra: dict = field(default_factory=dict)


class Workspace:
    """Solver-side copy of a grid as plain Python lists.

    ``times`` has one trailing ``inf`` sentinel entry.  ``adj[i]`` lists the
    non-obstacle Von Neumann neighbors of ``i`` in axis order (empty for
    obstacles).  Building a workspace is initialization work and is kept
    out of propagation timings.
    """

    def __init__(self, grid: Grid, sources, obstacle_speed: float = 0.0):
        n = grid.size
        self.grid = grid
        self.n = n
        self.ndims = grid.ndims
        self.dims = grid.dims
        self.h = grid.h
        speeds = grid.velocity
        blocked = speeds <= obstacle_speed
        self.blocked = blocked.tolist()

        self.sources = _check_sources(grid, sources, blocked)

        table = grid.axis_table()
        self.axis_rows = table.tolist()
        nb = np.where(blocked[np.minimum(table, n - 1)] | (table == n), -1, table)
        nb[blocked] = -1
        self.adj = [[j for j in row if j >= 0] for row in nb.tolist()]

        self.speeds = speeds.tolist()
        self.times = [INF] * (n + 1)
        self.state = [UNKNOWN] * n
        for i in np.flatnonzero(blocked).tolist():
            self.state[i] = FROZEN
        self.solve = make_kernel(self.times, self.speeds, self.axis_rows, self.h, self.ndims)
        self.max_speed = float(speeds.max()) if n else 0.0
        self.sum_speed = float(speeds.sum())

    def counting_solver(self, stats: SolveStats):
        """Wrap ``solve`` so that every call bumps ``stats.solves``."""
        raw = self.solve

        def solve(i):
            stats.solves += 1
            return raw(i)

        return solve

    def write_back(self):
        g = self.grid
        g.time[:] = self.times[: self.n]
        g.state[:] = self.state
        return g.time


def _check_sources(grid: Grid, sources, blocked) -> list[int]:
    if sources is None:
        raise ValueError("at least one start cell is required")
    out = []
    for s in sources:
        if isinstance(s, (int, np.integer)):
            idx = int(s)
            if not 0 <= idx < grid.size:
                raise IndexError(f"start index {idx} out of range")
        else:
            idx = grid.flat_index(tuple(int(c) for c in s))
        if blocked[idx]:
            raise ValueError(f"start cell {grid.coords_of(idx)} lies on an obstacle")
        if idx not in out:
            out.append(idx)
    if not out:
        raise ValueError("at least one start cell is required")
    return out
