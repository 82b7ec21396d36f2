"""First-order upwind Eikonal update on cubic cells.

The update of a cell gathers, for every axis, the smaller arrival time of
its two neighbors along that axis.  Axes whose value is infinite or not
below the cell's current time are dropped.  The remaining parent values are
sorted and included bottom-up: start with the one-sided update from the
smallest parent and add the next parent only while the candidate time is
not below it.
"""
from __future__ import annotations

import math
from typing import Sequence

from .grid import Grid

INF = math.inf


def solve_n_dims(dim_count: int, parents: Sequence[float], h: float, speed: float) -> float:
    """Solve the quadratic using the ``dim_count`` smallest (sorted) parents.

    Returns ``inf`` when the discriminant is negative.
    """
    if dim_count == 1:
        return parents[0] + h / speed
    sum_t = 0.0
    sum_t2 = 0.0
    for k in range(dim_count):
        t = parents[k]
        sum_t += t
        sum_t2 += t * t
    a = dim_count
    b = -2.0 * sum_t
    c = sum_t2 - (h * h) / (speed * speed)
    q = b * b - 4.0 * a * c
    if q < 0:
        return INF
    return (-b + math.sqrt(q)) / (2.0 * a)


def causal_solve(axis_minima: Sequence[float], current: float, h: float, speed: float) -> float:
    """Bottom-up causal update from per-axis neighbor minima.

    ``axis_minima`` holds one value per axis (``inf`` when both neighbors
    along that axis are unknown).  ``current`` is the cell's present time.
    """
    values = [m for m in axis_minima if m != INF and m < current]
    a = len(values)
    if a == 0:
        return INF
    values.sort()
    t = INF
    for dim in range(1, a + 1):
        t = solve_n_dims(dim, values, h, speed)
        if dim == a or t < values[dim]:
            break
    return t


def solve_eikonal(index: int, grid: Grid) -> float:
    """Candidate arrival time for ``index`` given the grid's current times."""
    minima = [grid.min_t_dim(index, d) for d in range(grid.ndims)]
    return causal_solve(minima, float(grid.time[index]), grid.h, float(grid.velocity[index]))


def make_kernel(times: list, speeds: list, axis_rows: list, h: float, ndims: int):
    """Build a fast ``solve(i)`` closure over plain Python lists.

    ``times`` must carry one extra trailing ``inf`` entry used as the
    sentinel for missing neighbors; ``axis_rows[i]`` is the row of
    :meth:`Grid.axis_table` for cell ``i``.  Same algorithm as
    :func:`causal_solve`, unrolled for the solver hot loops.
    """
    sqrt = math.sqrt
    h2 = h * h
    cols = range(0, 2 * ndims, 2)

    def solve(i):
        ti = times[i]
        row = axis_rows[i]
        vals = []
        for k in cols:
            x = times[row[k]]
            y = times[row[k + 1]]
            if y < x:
                x = y
            if x < ti:
                vals.append(x)
        a = len(vals)
        if a == 0:
            return INF
        f = speeds[i]
        if a == 1:
            return vals[0] + h / f
        vals.sort()
        t = vals[0] + h / f
        if t < vals[1]:
            return t
        sum_t = vals[0]
        sum_t2 = sum_t * sum_t
        c0 = h2 / (f * f)
        for dim in range(2, a + 1):
            v = vals[dim - 1]
            sum_t += v
            sum_t2 += v * v
            b = -2.0 * sum_t
            q = b * b - 4.0 * dim * (sum_t2 - c0)
            if q < 0:
                t = INF
            else:
                t = (-b + sqrt(q)) / (2.0 * dim)
            if dim == a or t < vals[dim]:
                break
        return t

    return solve
