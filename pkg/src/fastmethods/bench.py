"""Benchmark scenarios, error norms and the timing loop.

Four scenario families are provided: an empty map with constant speed,
alternating barriers, uniformly random speeds and a two-speed
checkerboard.  Random speeds come from numpy's PCG64 bit generator seeded
with the experiment seed, so grids are reproducible bit for bit.
"""
from __future__ import annotations

import csv
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grid import Grid
from .solvers import SolverKind, SolverParams, prepare, propagate

log = logging.getLogger(__name__)

FAMILIES = ("empty", "barriers", "random", "checkerboard")

# cells per axis used for the empty-map experiment, per dimension count
EMPTY_LADDER = {
    2: (50, 100, 200, 400, 800, 1000, 1500, 2000, 2500, 3000, 4000),
    3: (14, 22, 34, 54, 86, 100, 131, 159, 184, 208, 252),
    4: (7, 10, 14, 20, 28, 32, 39, 45, 50, 55, 63),
}
BARRIER_DIMS = {2: (1000, 2000), 3: (100, 100, 200)}
BARRIER_COUNTS = tuple(range(10))
RANDOM_CELLS = {2: 2000, 3: 159, 4: 45}
FMAX_LADDER = tuple(range(10, 101, 10))

# untidy queue settings that replace the defaults for checkerboard maps
CHECKER_UNTIDY = {3: (1000, 0.01), 4: (20000, 0.025)}

CSV_HEADER = ("experiment", "family", "ndims", "param", "solver", "run_mean_s", "run_stddev_s",
              "ratio_vs_fmm", "l1_err", "linf_err")


def center_cell(dims) -> tuple[int, ...]:
    return tuple(d // 2 for d in dims)


def corner_cell(dims) -> tuple[int, ...]:
    """Start cell close to the origin corner: 5% along every axis."""
    return tuple(min(d - 1, int(0.05 * d)) for d in dims)


def gen_empty(ndims: int, cells_per_axis: int) -> Grid:
    """Unit hypercube, constant speed 1, start at the center."""
    dims = (cells_per_axis,) * ndims
    g = Grid(dims, 1.0 / cells_per_axis)
    g.sources = [center_cell(dims)]
    return g


def barrier_layout(dims, barrier_count: int):
    """Rows of the long (last) axis holding barriers, and the gap width.

    Barriers sit at ``round((k + 1) * L / (count + 1))`` along the long axis.
    The gap spans 10% (at least one cell) of axis 0 and alternates between
    the low end (even barriers) and the high end (odd barriers).
    """
    length = dims[-1]
    width = dims[0]
    gap = max(1, round(0.1 * width))
    rows = [round((k + 1) * length / (barrier_count + 1)) for k in range(barrier_count)]
    return rows, gap


def gen_barriers(ndims: int, barrier_count: int, scale: float = 1.0) -> Grid:
    """Alternating one-cell-thick barriers across the long axis of [0,1]^(N-1) x [0,2].

    ``scale`` divides the reference resolution (1000x2000 in 2D,
    100x100x200 in 3D).
    """
    if ndims not in BARRIER_DIMS:
        raise ValueError("barrier maps exist in 2D and 3D only")
    if not 0 <= barrier_count <= 9:
        raise ValueError("barrier_count must be in [0, 9]")
    dims = tuple(max(2, round(d / scale)) for d in BARRIER_DIMS[ndims])
    speed = np.ones(dims)
    rows, gap = barrier_layout(dims, barrier_count)
    width = dims[0]
    for k, r in enumerate(rows):
        slab = speed[..., r]
        if k % 2 == 0:
            slab[gap:, ...] = 0.0
        else:
            slab[: width - gap, ...] = 0.0
    g = Grid(dims, 1.0 / dims[0], speed)
    g.sources = [corner_cell(dims)]
    return g


def gen_random(ndims: int, cells_per_axis: int, fmax: float, seed: int = 0) -> Grid:
    """Speeds drawn independently from U[1, fmax] (PCG64 seeded with ``seed``)."""
    if fmax < 1:
        raise ValueError("fmax must be >= 1")
    dims = (cells_per_axis,) * ndims
    rng = np.random.Generator(np.random.PCG64(seed))
    speed = rng.uniform(1.0, fmax, size=math.prod(dims))
    g = Grid(dims, 1.0 / cells_per_axis, speed)
    g.sources = [center_cell(dims)]
    return g


def gen_checkerboard(ndims: int, cells_per_axis: int, fmax: float, divisions: int = 10) -> Grid:
    """Blocks alternating speed 1 (even block parity) and ``fmax`` (odd)."""
    if divisions < 1:
        raise ValueError("divisions must be >= 1")
    dims = (cells_per_axis,) * ndims
    block = (np.arange(cells_per_axis) * divisions) // cells_per_axis
    parity = sum(np.meshgrid(*([block] * ndims), indexing="ij")) % 2
    speed = np.where(parity == 0, 1.0, float(fmax))
    g = Grid(dims, 1.0 / cells_per_axis, speed)
    g.sources = [center_cell(dims)]
    return g


# -- norms --------------------------------------------------------------------

def l1_norm(field, h: float, ndims: int) -> float:
    """Integral-style L1 norm ``h**N * sum(|T|)`` over finite cells."""
    f = np.asarray(field, dtype=np.float64)
    f = f[np.isfinite(f)]
    return float(h ** ndims * np.abs(f).sum())


def linf_norm(field) -> float:
    f = np.asarray(field, dtype=np.float64)
    f = f[np.isfinite(f)]
    return float(np.abs(f).max()) if f.size else 0.0


def error_norms(field, reference, h: float, ndims: int) -> tuple[float, float]:
    """(L1, Linf) of ``field - reference``; infinite cells must coincide."""
    a = np.asarray(field, dtype=np.float64)
    b = np.asarray(reference, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    fa, fb = np.isfinite(a), np.isfinite(b)
    if not np.array_equal(fa, fb):
        raise ValueError(f"infinite cells differ at {int(np.sum(fa != fb))} positions")
    diff = a[fa] - b[fb]
    return l1_norm(diff, h, ndims), linf_norm(diff)


# -- experiments --------------------------------------------------------------

@dataclass
class ExperimentSpec:
    """One benchmark scenario swept over a parameter ladder.

    The swept parameter depends on the family: cells per axis for
    ``empty``, barrier count for ``barriers`` and maximum speed for
    ``random``/``checkerboard``.  Reference sizes are divided by
    ``scale``.
    """

    family: str
    ndims: int = 2
    cells: Sequence[int] | None = None
    barriers: Sequence[int] | None = None
    fmax: Sequence[float] | None = None
    divisions: int = 10
    seed: int = 0
    start: str | None = None
    solvers: Sequence = tuple(SolverKind)
    runs: int = 10
    scale: float = 1.0
    params: SolverParams | None = None
    name: str | None = None
    warmup: bool = True

    def __post_init__(self):
        self.family = self.family.lower()
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.family == "barriers" and self.ndims not in BARRIER_DIMS:
            raise ValueError("barrier maps exist in 2D and 3D only")
        if self.family != "barriers" and self.ndims < 1:
            raise ValueError("ndims must be >= 1")
        if self.start not in (None, "center", "corner"):
            raise ValueError("start must be 'center' or 'corner'")
        self.solvers = tuple(SolverKind.parse(s) for s in self.solvers)
        if self.name is None:
            self.name = f"{self.family}{self.ndims}d"

    def _scaled(self, n):
        return max(2, round(n / self.scale))

    def points(self):
        """Yield ``(param_value, grid)`` for every point of the ladder."""
        fam = self.family
        if fam == "empty":
            cells = self.cells or [self._scaled(c) for c in EMPTY_LADDER[self.ndims]]
            for c in cells:
                yield c, self._place(gen_empty(self.ndims, c))
        elif fam == "barriers":
            for b in (self.barriers if self.barriers is not None else BARRIER_COUNTS):
                yield b, self._place(gen_barriers(self.ndims, b, self.scale))
        else:
            cells = self.cells[0] if self.cells else self._scaled(RANDOM_CELLS[self.ndims])
            for fmax in (self.fmax or FMAX_LADDER):
                if fam == "random":
                    g = gen_random(self.ndims, cells, fmax, self.seed)
                else:
                    g = gen_checkerboard(self.ndims, cells, fmax, self.divisions)
                yield fmax, self._place(g)

    def _place(self, g: Grid) -> Grid:
        if self.start == "center":
            g.sources = [center_cell(g.dims)]
        elif self.start == "corner":
            g.sources = [corner_cell(g.dims)]
        return g

    def solver_params(self) -> SolverParams:
        if self.params is not None:
            return self.params
        if self.family == "checkerboard" and self.ndims in CHECKER_UNTIDY:
            k, rng = CHECKER_UNTIDY[self.ndims]
            return SolverParams(ufmm_buckets=k, ufmm_range=rng)
        return SolverParams()


@dataclass
class BenchRecord:
    experiment: str
    family: str
    ndims: int
    param: float
    solver: str
    run_mean_s: float
    run_stddev_s: float
    ratio_vs_fmm: float
    l1_err: float
    linf_err: float
    run_times: list = field(default_factory=list)
    error: str | None = None

    def row(self):
        return [getattr(self, k) for k in CSV_HEADER]


def time_solver(kind, grid: Grid, params: SolverParams, runs: int, warmup: bool = True):
    """Time the propagation phase only; returns (field, list of run times)."""
    times = []
    for r in range(runs + (1 if warmup else 0)):
        ws = prepare(grid, None, params)
        t0 = time.perf_counter()
        field = propagate(kind, ws, params)
        dt = time.perf_counter() - t0
        if warmup and r == 0:
            continue
        times.append(dt)
    return field.copy(), times


def _stats(times):
    mean = float(np.mean(times))
    std = float(np.std(times, ddof=1)) if len(times) > 1 else 0.0
    return mean, std


def run_experiment(spec: ExperimentSpec) -> list[BenchRecord]:
    """Run every solver of ``spec`` on every ladder point.

    FMM is always run first on each point: it provides the reference field
    for the error norms and the denominator of the time ratio.  A solver
    that raises yields a record with NaN measurements and ``error`` set.
    """
    params = spec.solver_params()
    records = []
    nan = float("nan")
    for param, grid in spec.points():
        log.info("%s param=%s dims=%s", spec.name, param, grid.dims)
        ref, fmm_times = time_solver(SolverKind.FMM, grid, params, spec.runs, spec.warmup)
        fmm_mean, fmm_std = _stats(fmm_times)
        for kind in spec.solvers:
            base = dict(experiment=spec.name, family=spec.family, ndims=spec.ndims,
                        param=param, solver=kind.value)
            if kind is SolverKind.FMM:
                records.append(BenchRecord(**base, run_mean_s=fmm_mean, run_stddev_s=fmm_std,
                                           ratio_vs_fmm=1.0, l1_err=0.0, linf_err=0.0,
                                           run_times=fmm_times))
                continue
            try:
                field, run_times = time_solver(kind, grid, params, spec.runs, spec.warmup)
                mean, std = _stats(run_times)
                l1, linf = error_norms(field, ref, grid.h, grid.ndims)
                records.append(BenchRecord(**base, run_mean_s=mean, run_stddev_s=std,
                                           ratio_vs_fmm=mean / fmm_mean, l1_err=l1,
                                           linf_err=linf, run_times=run_times))
            except Exception as exc:  # one failing solver must not abort the suite
                log.warning("%s failed on %s param=%s: %s", kind.value, spec.name, param, exc)
                records.append(BenchRecord(**base, run_mean_s=nan, run_stddev_s=nan,
                                           ratio_vs_fmm=nan, l1_err=nan, linf_err=nan,
                                           error=f"{type(exc).__name__}: {exc}"))
    return records


def write_csv(path, records: Sequence[BenchRecord]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.row())


def write_runs_csv(path, records: Sequence[BenchRecord]):
    """Long-format per-run timings, one row per (record, run)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("experiment", "family", "ndims", "param", "solver", "run", "time_s"))
        for r in records:
            for k, t in enumerate(r.run_times):
                w.writerow((r.experiment, r.family, r.ndims, r.param, r.solver, k, t))


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def summary_table(records: Sequence[BenchRecord]) -> str:
    lines = [f"{'param':>8} {'solver':>7} {'mean_s':>10} {'ratio':>7} {'l1_err':>10} {'linf_err':>10}"]
    for r in records:
        if r.error:
            lines.append(f"{r.param!s:>8} {r.solver:>7}  FAILED: {r.error}")
        else:
            lines.append(f"{r.param!s:>8} {r.solver:>7} {r.run_mean_s:10.4g} {r.ratio_vs_fmm:7.3f} "
                         f"{r.l1_err:10.3g} {r.linf_err:10.3g}")
    return "\n".join(lines)
