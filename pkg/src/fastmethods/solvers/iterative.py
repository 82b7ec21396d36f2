"""Solvers without a sorted narrow band: GMM, FIM and DDQM."""
from __future__ import annotations

import math

from ..structures import DoubleQueue
from ._workspace import FROZEN, NARROW, UNKNOWN, SolveStats, Workspace

INF = math.inf

# FIM convergence test with epsilon == 0 uses this instead, so that
# "improved by less than epsilon" still means "did not change".
FIM_EPS_FLOOR = 1e-47


def gmm_delta(h: float, max_speed: float, ndims: int = 1) -> float:
    """Group width of GMM, ``h / (max_speed * sqrt(ndims))``.

    With ``ndims`` equal to the grid dimension this is the smallest time
    gap between a cell and any cell it can influence, which keeps GMM
    exact.  ``ndims=1`` gives the wider one-cell crossing time, which is
    faster but can freeze cells before their value is final.
    """
    return h / (max_speed * math.sqrt(ndims))


def gmm_propagate(ws: Workspace, stats: SolveStats | None = None, delta: float | None = None):
    """Group Marching.

    Each iteration raises the threshold ``tm`` by ``delta`` and takes the
    group of narrow cells with ``T <= tm``.  The group is traversed twice,
    in reverse and then forward order, updating non-frozen neighbors; the
    forward pass also moves unknown neighbors into the band and freezes the
    group members.
    """
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve
    if delta is None:
        delta = gmm_delta(ws.h, ws.max_speed, ws.ndims)
    if not delta > 0:
        raise ValueError("GMM group width must be positive")

    for s in ws.sources:
        times[s] = 0.0
        state[s] = FROZEN
    frozen = len(ws.sources)
    narrow = []
    tm = INF
    for s in ws.sources:
        for j in adj[s]:
            if state[j] == FROZEN:
                continue
            t = solve(j)
            if t < times[j]:
                times[j] = t
            if times[j] < tm:
                tm = times[j]
            if state[j] == UNKNOWN:
                state[j] = NARROW
                narrow.append(j)

    iterations = 0
    while narrow:
        iterations += 1
        tm += delta
        group = [x for x in narrow if times[x] <= tm]
        if not group:
            continue
        for x in reversed(group):
            for j in adj[x]:
                if state[j] == FROZEN:
                    continue
                t = solve(j)
                if t < times[j]:
                    times[j] = t
        added = []
        for x in group:
            for j in adj[x]:
                sj = state[j]
                if sj == FROZEN:
                    continue
                t = solve(j)
                if t < times[j]:
                    times[j] = t
                if sj == UNKNOWN:
                    state[j] = NARROW
                    added.append(j)
            state[x] = FROZEN
            frozen += 1
        narrow = [x for x in narrow if state[x] != FROZEN]
        narrow.extend(added)
    if stats is not None:
        stats.frozen += frozen
        stats.iterations += iterations
    return times


def fim_propagate(ws: Workspace, epsilon: float = 0.0, stats: SolveStats | None = None):
    """Fast Iterative Method with an unsorted active list.

    A listed cell is re-solved on every pass; once its value moves by less
    than ``epsilon`` it leaves the list and its locked neighbors are
    re-solved, joining the list (at its position) when they improve.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    eps = epsilon if epsilon > 0 else FIM_EPS_FLOOR
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve

    for i in range(ws.n):
        state[i] = FROZEN
    for s in ws.sources:
        times[s] = 0.0
    active = []
    for s in ws.sources:
        for j in adj[s]:
            if times[j] != 0.0 and state[j] != NARROW:
                state[j] = NARROW
                active.append(j)

    passes = 0
    while active:
        passes += 1
        nxt = []
        for x in active:
            old = times[x]
            t = solve(x)
            if t < old:
                times[x] = t
            else:
                t = old
            if t == old or abs(t - old) < eps:
                for j in adj[x]:
                    if state[j] != FROZEN:
                        continue
                    tj = solve(j)
                    if tj < times[j]:
                        times[j] = tj
                        state[j] = NARROW
                        nxt.append(j)
                state[x] = FROZEN
            else:
                nxt.append(x)
        active = nxt
    if stats is not None:
        stats.iterations += passes
    return times


def ddqm_initial_step(h: float, n: int, speed_sum: float) -> float:
    return 1.5 * h * n / speed_sum


def ddqm_propagate(ws: Workspace, stats: SolveStats | None = None):
    """Double Dynamic Queue Method.

    Cells are locked (``FROZEN``) or queued (``NARROW``).  An improved cell
    unlocks each locked neighbor with a larger time and routes it to the
    first queue if the improved value is within the threshold, else to the
    second.
    """
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve

    dq = DoubleQueue(ddqm_initial_step(ws.h, ws.n, ws.sum_speed))
    for i in range(ws.n):
        state[i] = FROZEN
    for s in ws.sources:
        times[s] = 0.0
    for s in ws.sources:
        for j in adj[s]:
            if times[j] != 0.0 and state[j] != NARROW:
                state[j] = NARROW
                dq.q1.append(j)

    push = dq.push
    rounds = 0
    while len(dq):
        rounds += 1
        q1 = dq.q1
        popleft = q1.popleft
        while q1:
            x = popleft()
            t = solve(x)
            if t < times[x]:
                times[x] = t
                for j in adj[x]:
                    if state[j] == FROZEN and t < times[j]:
                        state[j] = NARROW
                        push(j, t)
            state[x] = FROZEN
        dq.swap_and_retune()
    if stats is not None:
        stats.iterations += rounds
        stats.extra["final_step"] = dq.step
    return times
