"""N-dimensional Cartesian grid with flat storage.

Cells are stored in a single flat array with axis 0 varying fastest, so the
cell at coordinates ``(c0, c1, ..., cN-1)`` lives at
``c0 + c1*d0 + c2*d0*d1 + ...``.  This is the same convention used by the
EIKGRID/EIKTIME file formats.
"""
from __future__ import annotations

import enum
import math
from pathlib import Path
from typing import Sequence

import numpy as np

INF = math.inf

GRID_MAGIC = "EIKGRID 1"
TIME_MAGIC = "EIKTIME 1"


class CellState(enum.IntEnum):
    UNKNOWN = 0
    NARROW = 1
    FROZEN = 2


class GridFormatError(ValueError):
    """Raised when a grid or time file cannot be parsed."""


def flat_index(coords: Sequence[int], dims: Sequence[int]) -> int:
    if len(coords) != len(dims):
        raise IndexError(f"expected {len(dims)} coordinates, got {len(coords)}")
    idx = 0
    stride = 1
    for c, d in zip(coords, dims):
        if not 0 <= c < d:
            raise IndexError(f"coordinate {tuple(coords)} out of range for dims {tuple(dims)}")
        idx += int(c) * stride
        stride *= d
    return idx


def coords_of(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    n = math.prod(dims)
    if not 0 <= index < n:
        raise IndexError(f"index {index} out of range for {n} cells")
    out = []
    for d in dims:
        index, c = divmod(index, d)
        out.append(c)
    return tuple(out)


def strides_of(dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    s = 1
    for d in dims:
        out.append(s)
        s *= d
    return tuple(out)


class Grid:
    """Rectangular grid of cubic cells holding velocity, arrival time and state.

    ``velocity``, ``time`` and ``state`` are flat numpy arrays of length
    ``prod(dims)``.  Use :meth:`reshape` to view a flat field with the grid's
    shape (``order='F'`` so that axis 0 is the fastest one).
    """

    def __init__(self, dims: Sequence[int], h: float = 1.0, velocity=None):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise ValueError("grid needs at least one dimension")
        if any(d < 1 for d in dims):
            raise ValueError(f"all dims must be >= 1, got {dims}")
        if not h > 0:
            raise ValueError(f"cell size h must be positive, got {h}")
        self.dims = dims
        self.ndims = len(dims)
        self.h = float(h)
        self.size = math.prod(dims)
        self.strides = strides_of(dims)
        if velocity is None:
            self.velocity = np.ones(self.size)
        else:
            v = np.asarray(velocity, dtype=np.float64)
            if v.ndim > 1:
                if v.shape != dims:
                    raise ValueError(f"velocity shape {v.shape} does not match dims {dims}")
                v = v.reshape(-1, order="F")
            v = np.ascontiguousarray(v)
            if v.size != self.size:
                raise ValueError(f"velocity has {v.size} values, grid has {self.size} cells")
            if np.any(v < 0) or np.any(np.isnan(v)):
                raise ValueError("velocity must be non-negative")
            self.velocity = v
        self.time = np.full(self.size, INF)
        self.state = np.full(self.size, CellState.UNKNOWN, dtype=np.int8)
        # default start cells, set by the scenario generators
        self.sources = None

    def __repr__(self):
        return f"Grid(dims={self.dims}, h={self.h})"

    def copy(self) -> "Grid":
        g = Grid(self.dims, self.h, self.velocity.copy())
        g.time = self.time.copy()
        g.state = self.state.copy()
        g.sources = None if self.sources is None else list(self.sources)
        return g

    def reset(self):
        self.time.fill(INF)
        self.state.fill(CellState.UNKNOWN)

    def flat_index(self, coords: Sequence[int]) -> int:
        return flat_index(coords, self.dims)

    def coords_of(self, index: int) -> tuple[int, ...]:
        return coords_of(index, self.dims)

    def reshape(self, field=None) -> np.ndarray:
        """View a flat field (default: ``time``) with shape ``dims``."""
        if field is None:
            field = self.time
        return np.asarray(field).reshape(self.dims, order="F")

    def neighbors(self, index: int) -> list[int]:
        """Von Neumann neighbors in axis order: axis 0 minus, axis 0 plus, axis 1 minus, ..."""
        coords = self.coords_of(index)
        out = []
        for d, (c, s) in enumerate(zip(coords, self.strides)):
            if c > 0:
                out.append(index - s)
            if c < self.dims[d] - 1:
                out.append(index + s)
        return out

    def min_t_dim(self, index: int, dim: int) -> float:
        """Smallest arrival time among the neighbors of ``index`` along axis ``dim``."""
        if not 0 <= dim < self.ndims:
            raise IndexError(f"axis {dim} out of range for {self.ndims}-D grid")
        c = self.coords_of(index)[dim]
        s = self.strides[dim]
        t = INF
        if c > 0:
            t = self.time[index - s]
        if c < self.dims[dim] - 1:
            t = min(t, self.time[index + s])
        return float(t)

    def obstacles(self, threshold: float = 0.0) -> np.ndarray:
        return self.velocity <= threshold

    def axis_table(self) -> np.ndarray:
        """(size, 2N) table of per-axis neighbor pairs.

        Column ``2d`` holds the minus-side neighbor along axis ``d`` and
        column ``2d+1`` the plus side.  Missing neighbors point at the
        sentinel index ``size``.
        """
        n = self.size
        idx = np.arange(n, dtype=np.int64)
        table = np.empty((n, 2 * self.ndims), dtype=np.int64)
        for d, (dim, s) in enumerate(zip(self.dims, self.strides)):
            c = (idx // s) % dim
            table[:, 2 * d] = np.where(c > 0, idx - s, n)
            table[:, 2 * d + 1] = np.where(c < dim - 1, idx + s, n)
        return table


# -- file I/O -----------------------------------------------------------------

def _write(path, magic: str, dims, h: float, values: np.ndarray):
    header = f"{magic}\n{len(dims)}\n{' '.join(str(d) for d in dims)}\n{h!r}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(np.asarray(values, dtype="<f8").tobytes())


def _read(path, magic: str):
    data = Path(path).read_bytes()
    lines = []
    pos = 0
    for _ in range(4):
        end = data.find(b"\n", pos)
        if end < 0:
            raise GridFormatError(f"{path}: truncated header")
        lines.append(data[pos:end].decode("ascii", errors="replace").strip())
        pos = end + 1
    if lines[0] != magic:
        raise GridFormatError(f"{path}: expected magic {magic!r}, found {lines[0]!r}")
    try:
        ndims = int(lines[1])
        dims = tuple(int(x) for x in lines[2].split())
        h = float(lines[3])
    except ValueError as exc:
        raise GridFormatError(f"{path}: malformed header ({exc})") from None
    if ndims < 1 or len(dims) != ndims or any(d < 1 for d in dims):
        raise GridFormatError(f"{path}: inconsistent dimensions {lines[1]!r} / {lines[2]!r}")
    if not h > 0:
        raise GridFormatError(f"{path}: cell size must be positive")
    n = math.prod(dims)
    payload = data[pos:]
    if len(payload) != 8 * n:
        raise GridFormatError(f"{path}: expected {8 * n} payload bytes, found {len(payload)}")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    return dims, h, values


def write_grid(path, grid: Grid):
    _write(path, GRID_MAGIC, grid.dims, grid.h, grid.velocity)


def read_grid(path) -> Grid:
    dims, h, values = _read(path, GRID_MAGIC)
    if np.any(np.isnan(values)) or np.any(values < 0):
        raise GridFormatError(f"{path}: velocities must be non-negative")
    return Grid(dims, h, values)


def write_time(path, grid: Grid, field=None):
    _write(path, TIME_MAGIC, grid.dims, grid.h, grid.time if field is None else field)


def read_time(path) -> tuple[tuple[int, ...], float, np.ndarray]:
    """Return ``(dims, h, flat_times)`` from an EIKTIME file."""
    return _read(path, TIME_MAGIC)
