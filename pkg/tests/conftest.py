import numpy as np
import pytest

from fastmethods import bench
from fastmethods.solvers import EXACT_SOLVERS, SolverKind, solve


def field_of(kind, grid, sources=None, **kw):
    """Solve on a copy and return the flat time field."""
    g = grid.copy()
    return solve(kind, g, sources, **kw).copy()


@pytest.fixture(scope="session")
def small_grids():
    """Small instances of the four scenario families, keyed by name."""
    return {
        "empty": bench.gen_empty(2, 30),
        "barriers": bench.gen_barriers(2, 3, scale=40),
        "random": bench.gen_random(2, 30, 10, seed=7),
        "checker": bench.gen_checkerboard(2, 30, 10, divisions=5),
        "empty3d": bench.gen_empty(3, 9),
    }


@pytest.fixture(scope="session")
def fmm_fields(small_grids):
    return {name: field_of(SolverKind.FMM, g) for name, g in small_grids.items()}


def assert_close(a, b, tol):
    a = np.asarray(a)
    b = np.asarray(b)
    fin = np.isfinite(b)
    assert np.array_equal(np.isfinite(a), fin)
    if fin.any():
        assert np.max(np.abs(a[fin] - b[fin])) <= tol


__all__ = ["EXACT_SOLVERS", "assert_close", "field_of"]
