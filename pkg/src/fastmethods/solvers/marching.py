"""Label-setting solvers: FMM with a binary or Fibonacci heap, SFMM and UFMM."""
from __future__ import annotations

import heapq

from ..structures import BinaryHeap, FibonacciHeap, UntidyQueue
from ._workspace import FROZEN, NARROW, UNKNOWN, SolveStats, Workspace


def fmm_propagate(ws: Workspace, heap=None, stats: SolveStats | None = None):
    """Fast Marching with any container offering push/decrease/pop/len.

    Defaults to :class:`BinaryHeap`; pass :class:`FibonacciHeap` or
    :class:`UntidyQueue` for the FMMFib and UFMM variants.
    """
    if heap is None:
        heap = BinaryHeap()
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve
    pops = stats.pop_keys if stats is not None else None
    push, decrease, pop = heap.push, heap.decrease, heap.pop

    for s in ws.sources:
        times[s] = 0.0
        state[s] = NARROW
        push(s, 0.0)

    frozen = 0
    while len(heap):
        cur, key = pop()
        if pops is not None:
            pops.append(key)
        for j in adj[cur]:
            sj = state[j]
            if sj == FROZEN:
                continue
            t = solve(j)
            if t < times[j]:
                times[j] = t
                if sj == NARROW:
                    decrease(j, t)
            if sj == UNKNOWN:
                state[j] = NARROW
                push(j, times[j])
        state[cur] = FROZEN
        frozen += 1
    if stats is not None:
        stats.frozen += frozen
    return times


def fmm_fib_propagate(ws: Workspace, stats: SolveStats | None = None):
    return fmm_propagate(ws, FibonacciHeap(), stats)


def ufmm_propagate(ws: Workspace, bucket_count: int = 1000, t_range: float = 2.0,
                   stats: SolveStats | None = None):
    return fmm_propagate(ws, UntidyQueue(bucket_count, t_range), stats)


def sfmm_propagate(ws: Workspace, stats: SolveStats | None = None):
    """Simplified FMM: no decrease-key, improved cells are pushed again.

    Entries popped for an already frozen cell are stale and skipped.
    """
    times, state, adj = ws.times, ws.state, ws.adj
    solve = ws.counting_solver(stats) if stats is not None else ws.solve
    pops = stats.pop_keys if stats is not None else None
    heap = []
    heappush, heappop = heapq.heappush, heapq.heappop

    for s in ws.sources:
        times[s] = 0.0
        state[s] = NARROW
        heappush(heap, (0.0, s))

    frozen = 0
    while heap:
        key, cur = heappop(heap)
        if state[cur] == FROZEN:
            continue
        if pops is not None:
            pops.append(key)
        for j in adj[cur]:
            if state[j] == FROZEN:
                continue
            t = solve(j)
            if t < times[j]:
                times[j] = t
                heappush(heap, (t, j))
            if state[j] == UNKNOWN:
                state[j] = NARROW
        state[cur] = FROZEN
        frozen += 1
    if stats is not None:
        stats.frozen += frozen
    return times
