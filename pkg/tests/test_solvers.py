import math

import numpy as np
import pytest

from fastmethods import bench
from fastmethods.grid import CellState, Grid
from fastmethods.solvers import (ALL_SOLVERS, EXACT_SOLVERS, SolverKind, SolverParams, SolveStats,
                                 ddqm_initial_step, get_sweep_dirs, gmm_delta, prepare,
                                 propagate, solve)
from fastmethods.eikonal import solve_eikonal
from fastmethods.structures import UntidyRangeError

from conftest import assert_close, field_of


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_line_grid(kind):
    g = Grid((1, 3))
    t = solve(kind, g, [(0, 0)])
    np.testing.assert_allclose(t, [0.0, 1.0, 2.0], atol=1e-12)
    assert t[0] == 0.0


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_sources_are_zero_and_field_finite(kind, small_grids):
    g = small_grids["random"].copy()
    srcs = [(3, 4), (20, 25)]
    t = solve(kind, g, srcs)
    for s in srcs:
        assert t[g.flat_index(s)] == 0.0
    assert np.all(np.isfinite(t)) and np.all(t >= 0)


@pytest.mark.parametrize("kind", EXACT_SOLVERS)
@pytest.mark.parametrize("name", ["empty", "barriers", "random", "checker", "empty3d"])
def test_exact_solvers_match_fmm(kind, name, small_grids, fmm_fields):
    assert_close(field_of(kind, small_grids[name]), fmm_fields[name], 1e-9)


@pytest.mark.parametrize("name", ["empty", "barriers", "random", "checker", "empty3d"])
def test_lsm_matches_fsm(name, small_grids):
    g = small_grids[name]
    assert_close(field_of("LSM", g), field_of("FSM", g), 1e-12)


def test_sfmm_matches_fmm_tightly():
    g = bench.gen_random(2, 100, 10, seed=1)
    assert_close(field_of("SFMM", g), field_of("FMM", g), 1e-12)


def test_source_errors():
    g = Grid((4, 4))
    with pytest.raises(ValueError):
        solve("FMM", g, [])
    with pytest.raises(ValueError):
        solve("FMM", g)  # the grid has no default start cell
    with pytest.raises(IndexError):
        solve("FMM", g, [(4, 0)])
    with pytest.raises(IndexError):
        solve("FMM", g, [16])
    g.velocity[5] = 0.0
    with pytest.raises(ValueError):
        solve("FMM", g, [5])
    with pytest.raises(ValueError):
        SolverKind.parse("nope")
    assert SolverKind.parse("fmmfib") is SolverKind.FMMFIB
    # duplicated sources are harmless
    t = solve("FMM", Grid((3, 3)), [(1, 1), 4])
    assert t[4] == 0.0


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_obstacles_are_opaque(kind):
    # a wall across the whole grid cuts off the far side
    v = np.ones((10, 10))
    v[:, 5] = 0.0
    g = Grid((10, 10), h=0.1, velocity=v)
    t = g.reshape(solve(kind, g, [(2, 2)]))
    assert np.all(np.isinf(t[:, 5:]))
    assert np.all(np.isfinite(t[:, :5]))
    assert np.all(g.reshape(g.state)[:, 5] == CellState.FROZEN)


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_obstacle_threshold(kind):
    v = np.ones((8, 8))
    v[:, 4] = 0.5
    g = Grid((8, 8), velocity=v)
    t = g.reshape(solve(kind, g, [(1, 1)], SolverParams(obstacle_speed=0.5)))
    assert np.all(np.isinf(t[:, 4:]))


def test_two_sources_bounded_by_single_fields():
    # the discrete two-source field is never above the min of the single
    # fields and equals it away from the collision line
    for g in (bench.gen_empty(2, 60), bench.gen_random(2, 60, 10, seed=3)):
        a = field_of("FMM", g, [(10, 15)])
        b = field_of("FMM", g, [(45, 40)])
        ab = field_of("FMM", g, [(10, 15), (45, 40)])
        m = np.minimum(a, b)
        assert np.all(ab <= m + 1e-12)
        far = np.abs(a - b) > 8 * g.h / g.velocity.max()
        assert far.sum() > 0.5 * g.size
        assert np.max(np.abs(ab - m)[far]) <= 1e-9
        for kind in EXACT_SOLVERS:
            assert_close(field_of(kind, g, [(10, 15), (45, 40)]), ab, 1e-9)


def test_fmm_pop_keys_monotone(small_grids):
    for g in small_grids.values():
        st = SolveStats(pop_keys=[])
        solve("FMM", g.copy(), stats=st)
        keys = st.pop_keys
        assert len(keys) > 0
        assert all(x <= y for x, y in zip(keys, keys[1:]))


def test_gmm_freezes_each_cell_once():
    g = bench.gen_random(2, 40, 10, seed=2)
    st = SolveStats()
    t = solve("GMM", g, stats=st)
    assert st.frozen == g.size
    assert np.all(g.state == CellState.FROZEN)
    assert np.all(np.isfinite(t))


def test_gmm_delta():
    assert gmm_delta(1.0, 2.0) == 0.5
    assert gmm_delta(1.0, 1.0, 4) == 0.5
    g = bench.gen_empty(2, 50)
    wide = SolverParams(gmm_delta=gmm_delta(g.h, 1.0))
    assert_close(field_of("GMM", g, params=wide), field_of("FMM", g), 1e-9)
    with pytest.raises(ValueError):
        solve("GMM", g.copy(), params=SolverParams(gmm_delta=0.0))


def test_fim_large_epsilon_terminates_above_fmm():
    g = bench.gen_random(2, 40, 10, seed=5)
    ref = field_of("FMM", g)
    t = field_of("FIM", g, params=SolverParams(fim_epsilon=1e3))
    assert np.all(t >= ref - 1e-12)
    with pytest.raises(ValueError):
        SolverParams(fim_epsilon=-1.0)


def test_fim_evaluation_count_2d_empty():
    g = bench.gen_empty(2, 200)
    st = SolveStats()
    solve("FIM", g, stats=st)
    assert st.solves <= 4 * g.size


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sweep_dirs_cycle(n):
    start = [1] * n
    seen = []
    d = start
    for _ in range(2 ** n):
        d = get_sweep_dirs(d)
        seen.append(tuple(d))
    assert d == start
    assert len(set(seen)) == 2 ** n


def test_sweep_dirs_examples():
    assert get_sweep_dirs([1, 1, 1]) == [-1, -1, -1]
    assert get_sweep_dirs([-1, -1, -1]) == [1, -1, -1]


@pytest.mark.parametrize("ndims,cells", [(2, 30), (3, 10), (4, 6)])
def test_fsm_empty_sweep_count(ndims, cells):
    st = SolveStats()
    solve("FSM", bench.gen_empty(ndims, cells), stats=st)
    assert 1 <= st.changing_sweeps <= 2 ** ndims
    assert st.sweeps == st.changing_sweeps + 2 ** ndims


def test_fsm_barriers_need_more_sweeps_and_lsm_less_work():
    g = bench.gen_barriers(2, 9, scale=10)
    fsm, lsm = SolveStats(), SolveStats()
    t_fsm = field_of("FSM", g, stats=fsm)
    t_lsm = field_of("LSM", g, stats=lsm)
    assert fsm.changing_sweeps > 4
    assert lsm.solves < fsm.solves
    assert_close(t_fsm, field_of("FMM", g), 1e-9)
    assert_close(t_lsm, t_fsm, 1e-12)


def test_lsm_fewer_solves_on_empty():
    g = bench.gen_empty(2, 50)
    fsm, lsm = SolveStats(), SolveStats()
    field_of("FSM", g, stats=fsm)
    field_of("LSM", g, stats=lsm)
    assert lsm.solves < fsm.solves


def test_ddqm_initial_step_and_termination():
    assert ddqm_initial_step(1.0, 100, 100.0) == 1.5
    g = bench.gen_random(2, 40, 100, seed=9)
    st = SolveStats()
    solve("DDQM", g, stats=st)
    assert 0 < st.iterations < 10 * g.size
    assert st.extra["final_step"] > 0


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_fixed_point(kind, small_grids):
    for g0 in (small_grids["random"], small_grids["barriers"]):
        g = g0.copy()
        solve(kind, g)
        if kind is SolverKind.UFMM:
            continue
        srcs = {g.flat_index(s) for s in g.sources}
        stored = g.time.copy()
        for i in np.flatnonzero(np.isfinite(stored)):
            if i in srcs:
                continue
            g.time[i] = math.inf
            assert abs(solve_eikonal(i, g) - stored[i]) <= 1e-9
            g.time[i] = stored[i]


@pytest.mark.parametrize("kind", ALL_SOLVERS)
def test_speed_scaling(kind):
    g = bench.gen_random(2, 30, 10, seed=4)
    fast = g.copy()
    fast.velocity *= 10
    t = field_of(kind, g)
    t10 = field_of(kind, fast, params=SolverParams(ufmm_range=0.2))
    if kind is SolverKind.UFMM:
        t = field_of(kind, g, params=SolverParams(ufmm_range=2.0))
    assert_close(t10 * 10, t, 1e-9)


def test_ufmm_constant_speed_and_bounds():
    g = bench.gen_empty(2, 50)
    assert_close(field_of("UFMM", g), field_of("FMM", g), 1e-9)
    g = bench.gen_random(2, 100, 100, seed=1)
    err = np.abs(field_of("UFMM", g) - field_of("FMM", g))
    assert err.max() <= 5e-3
    with pytest.raises(UntidyRangeError):
        solve("UFMM", bench.gen_empty(2, 20), params=SolverParams(ufmm_range=0.05))


def test_prepare_then_propagate_equals_solve():
    g = bench.gen_checkerboard(2, 20, 10, divisions=4)
    ws = prepare(g.copy())
    a = propagate("FIM", ws).copy()
    assert_close(a, field_of("FIM", g), 0.0)
