"""
Arrival times on an empty map
=============================

A front starts at the center of the unit square and moves with speed 1.
The arrival time is then the distance to the center, up to the error of
the first-order scheme.
"""

import numpy as np

from fastmethods import Grid, bench, solve

# 100 x 100 cells of size h = 0.01, start cell at (50, 50)
grid = bench.gen_empty(2, 100)
times = solve("FMM", grid)

# fields are flat with axis 0 fastest; reshape gives the 2-D view
T = grid.reshape(times)
print("T at the start cell:", T[50, 50])
print("T at a corner:", T[0, 0])

# compare with the exact distance
idx = np.indices(grid.dims)
exact = grid.h * np.sqrt((idx[0] - 50) ** 2 + (idx[1] - 50) ** 2)
print("max error vs exact distance: %.4f" % np.abs(T - exact).max())

# slower speed in the right half: the front needs twice as long there
speed = np.ones(grid.dims)
speed[60:, :] = 0.5
slow = Grid(grid.dims, grid.h, speed)
T2 = slow.reshape(solve("FMM", slow, [(50, 50)]))
print("far right edge, uniform vs slowed:", T[99, 50], T2[99, 50])
