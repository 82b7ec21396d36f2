"""The nine Eikonal solvers and a common entry point."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..grid import Grid
from ._workspace import SolveStats, Workspace
from .iterative import (FIM_EPS_FLOOR, ddqm_initial_step, ddqm_propagate, fim_propagate,
                        gmm_delta, gmm_propagate)
from .marching import fmm_fib_propagate, fmm_propagate, sfmm_propagate, ufmm_propagate
from .sweeping import fsm_propagate, get_sweep_dirs, lsm_propagate, sweep_order


class SolverKind(str, enum.Enum):
    FMM = "FMM"
    FMMFIB = "FMMFib"
    SFMM = "SFMM"
    UFMM = "UFMM"
    GMM = "GMM"
    FIM = "FIM"
    FSM = "FSM"
    LSM = "LSM"
    DDQM = "DDQM"

    @classmethod
    def parse(cls, name) -> "SolverKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(k.value for k in cls)}")


ALL_SOLVERS = tuple(SolverKind)
# Solvers that reproduce the discrete solution exactly.
EXACT_SOLVERS = tuple(k for k in SolverKind if k is not SolverKind.UFMM)


@dataclass
class SolverParams:
    fim_epsilon: float = 0.0
    ufmm_buckets: int = 1000
    ufmm_range: float = 2.0
    obstacle_speed: float = 0.0
    # None: h / (max speed * sqrt(N)); set h / max speed for the wider groups
    gmm_delta: float | None = None

    def __post_init__(self):
        if self.fim_epsilon < 0:
            raise ValueError("fim_epsilon must be non-negative")
        if self.ufmm_buckets < 1 or not self.ufmm_range > 0:
            raise ValueError("untidy queue needs >= 1 bucket and a positive range")


def prepare(grid: Grid, sources=None, params: SolverParams | None = None) -> Workspace:
    """Validate start cells and build the solver workspace (initialization).

    ``sources`` defaults to ``grid.sources``.
    """
    params = params or SolverParams()
    if sources is None:
        sources = grid.sources
    grid.reset()
    return Workspace(grid, sources, params.obstacle_speed)


def propagate(kind, ws: Workspace, params: SolverParams | None = None,
              stats: SolveStats | None = None):
    """Run the propagation phase of ``kind`` on a prepared workspace."""
    kind = SolverKind.parse(kind)
    params = params or SolverParams()
    if kind is SolverKind.FMM:
        fmm_propagate(ws, stats=stats)
    elif kind is SolverKind.FMMFIB:
        fmm_fib_propagate(ws, stats=stats)
    elif kind is SolverKind.SFMM:
        sfmm_propagate(ws, stats=stats)
    elif kind is SolverKind.UFMM:
        ufmm_propagate(ws, params.ufmm_buckets, params.ufmm_range, stats=stats)
    elif kind is SolverKind.GMM:
        gmm_propagate(ws, stats=stats, delta=params.gmm_delta)
    elif kind is SolverKind.FIM:
        fim_propagate(ws, params.fim_epsilon, stats=stats)
    elif kind is SolverKind.FSM:
        fsm_propagate(ws, stats=stats)
    elif kind is SolverKind.LSM:
        lsm_propagate(ws, stats=stats)
    elif kind is SolverKind.DDQM:
        ddqm_propagate(ws, stats=stats)
    return ws.write_back()


def solve(kind, grid: Grid, sources=None, params: SolverParams | None = None,
          stats: SolveStats | None = None):
    """Compute the arrival-time field of ``grid`` from ``sources``.

    ``sources`` is a sequence of flat indices or coordinate tuples
    (default ``grid.sources``).  The result is written to ``grid.time``
    (flat, axis 0 fastest) and returned.
    Obstacle cells (speed <= ``params.obstacle_speed``) and cells they cut
    off keep an infinite time.
    """
    ws = prepare(grid, sources, params)
    return propagate(kind, ws, params, stats)


__all__ = [
    "ALL_SOLVERS", "EXACT_SOLVERS", "FIM_EPS_FLOOR", "SolveStats", "SolverKind", "SolverParams",
    "Workspace", "ddqm_initial_step", "ddqm_propagate", "fim_propagate", "fmm_fib_propagate",
    "fmm_propagate", "fsm_propagate", "get_sweep_dirs", "gmm_delta", "gmm_propagate",
    "lsm_propagate", "prepare", "propagate", "sfmm_propagate", "solve", "sweep_order",
    "ufmm_propagate",
]
