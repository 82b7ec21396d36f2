"""Sweep-based solvers: Fast Sweeping (FSM) and Lock Sweeping (LSM)."""
from __future__ import annotations

import numpy as np

from ._workspace import FROZEN, NARROW, SolveStats, Workspace


def get_sweep_dirs(dirs):
    """Next sweep direction: binary increment with carry over {-1, +1} digits.

    Starting from all ``+1`` the sequence visits every one of the ``2**N``
    combinations, the first one being all ``-1``.
    """
    dirs = list(dirs)
    for i in range(len(dirs)):
        dirs[i] += 2
        if dirs[i] <= 1:
            break
        dirs[i] = -1
    return dirs


def sweep_order(dims, dirs) -> list[int]:
    """Flat indices in Gauss-Seidel order for one sweep direction.

    The last axis is the outermost loop and axis 0 the innermost one; axis
    ``d`` is traversed forwards when ``dirs[d] == 1``, backwards otherwise.
    """
    idx = np.arange(int(np.prod(dims))).reshape(dims[::-1])
    slices = tuple(slice(None, None, dirs[d]) for d in reversed(range(len(dims))))
    return idx[slices].ravel().tolist()


def _orders(ws: Workspace):
    """All 2**N sweep orders keyed by direction tuple, obstacles removed."""
    blocked = ws.blocked
    out = {}
    dirs = [1] * ws.ndims
    for _ in range(2 ** ws.ndims):
        dirs = get_sweep_dirs(dirs)
        out[tuple(dirs)] = [i for i in sweep_order(ws.dims, dirs) if not blocked[i]]
    return out


def fsm_propagate(ws: Workspace, stats: SolveStats | None = None, orders=None):
    """Fast Sweeping.

    Sweeps cycle through the ``2**N`` directions and stop once ``2**N``
    consecutive sweeps leave every value untouched.
    """
    times = ws.times
    solve = ws.counting_solver(stats) if stats is not None else ws.solve
    if orders is None:
        orders = _orders(ws)
    for s in ws.sources:
        times[s] = 0.0

    ncycle = 2 ** ws.ndims
    dirs = [1] * ws.ndims
    quiet = 0
    sweeps = changing = 0
    while quiet < ncycle:
        dirs = get_sweep_dirs(dirs)
        changed = False
        for i in orders[tuple(dirs)]:
            t = solve(i)
            if t < times[i]:
                times[i] = t
                changed = True
        sweeps += 1
        if changed:
            changing += 1
            quiet = 0
        else:
            quiet += 1
    for i in range(ws.n):
        ws.state[i] = FROZEN
    if stats is not None:
        stats.sweeps += sweeps
        stats.changing_sweeps += changing
    return times


def lsm_propagate(ws: Workspace, stats: SolveStats | None = None, orders=None):
    """Lock Sweeping: FSM that only evaluates unlocked cells.

    ``NARROW`` marks an unlocked cell and ``FROZEN`` a locked one.  A cell
    whose value improves unlocks every neighbor with a larger time.  Every
    visited cell is locked after evaluation, so once a sweep changes nothing
    all cells are locked and no later sweep could change anything; the run
    stops there.
    """
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve
    if orders is None:
        orders = _orders(ws)
    for i in range(ws.n):
        state[i] = FROZEN
    unlocked = 0
    for s in ws.sources:
        times[s] = 0.0
    for s in ws.sources:
        for j in adj[s]:
            if state[j] != NARROW:
                state[j] = NARROW
                unlocked += 1

    dirs = [1] * ws.ndims
    sweeps = changing = 0
    while unlocked:
        dirs = get_sweep_dirs(dirs)
        changed = False
        for i in orders[tuple(dirs)]:
            if state[i] != NARROW:
                continue
            t = solve(i)
            if t < times[i]:
                times[i] = t
                changed = True
                for j in adj[i]:
                    if t < times[j] and state[j] != NARROW:
                        state[j] = NARROW
                        unlocked += 1
            state[i] = FROZEN
            unlocked -= 1
        sweeps += 1
        if changed:
            changing += 1
    if stats is not None:
        stats.sweeps += sweeps
        stats.changing_sweeps += changing
    return times
