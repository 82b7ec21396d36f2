"""
Nine solvers, one answer
========================

Every solver except UFMM reproduces the Fast Marching field.  UFMM trades
a small ordering error for O(n) queue operations.
"""

import time

import numpy as np

from fastmethods import ALL_SOLVERS, SolveStats, bench, solve

grid = bench.gen_random(2, 100, fmax=10, seed=1)
reference = solve("FMM", grid.copy()).copy()

print("%-7s %9s %10s %12s" % ("solver", "time [s]", "solves", "max |dT|"))
for kind in ALL_SOLVERS:
    stats = SolveStats()
    t0 = time.perf_counter()
    field = solve(kind, grid.copy(), stats=stats)
    dt = time.perf_counter() - t0
    err = np.abs(field - reference).max()
    print("%-7s %9.3f %10d %12.2e" % (kind.value, dt, stats.solves, err))

# sweeping methods depend heavily on the map: barriers force extra sweeps
walls = bench.gen_barriers(2, 9, scale=10)
for kind in ("FSM", "LSM"):
    stats = SolveStats()
    solve(kind, walls.copy(), stats=stats)
    print(kind, "on 9 barriers: %d solves, %d sweeps" % (stats.solves, stats.sweeps))
