"""Command-line front end.

Exit codes: 0 success, 1 tolerance / equivalence failure, 2 usage or file
format error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time

from . import bench
from .grid import GridFormatError, read_grid, read_time, write_grid, write_time
from .solvers import SolverKind, SolverParams, prepare, propagate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _solver(text):
    try:
        return SolverKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _solver_list(text):
    return [_solver(t) for t in text.split(",") if t.strip()]


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def parse_sources(specs, grid):
    """Turn ``--sources`` values into coordinate tuples.

    Each value is ``center``, ``corner`` or one or more ``;``-separated
    comma-separated coordinate tuples such as ``3,4;10,2``.
    """
    if not specs:
        specs = ["center"]
    out = []
    for spec in specs:
        for part in spec.split(";"):
            part = part.strip()
            if not part:
                continue
            if part == "center":
                out.append(bench.center_cell(grid.dims))
            elif part == "corner":
                out.append(bench.corner_cell(grid.dims))
            else:
                try:
                    coords = tuple(int(c) for c in part.split(","))
                except ValueError:
                    raise UsageError(f"bad source {part!r}") from None
                if len(coords) != grid.ndims:
                    raise UsageError(f"source {part!r} needs {grid.ndims} coordinates")
                if any(not 0 <= c < d for c, d in zip(coords, grid.dims)):
                    raise UsageError(f"source {part!r} lies outside the grid {grid.dims}")
                out.append(coords)
    if not out:
        raise UsageError("no sources given")
    return out


def _params(args) -> SolverParams:
    return SolverParams(fim_epsilon=args.epsilon, ufmm_buckets=args.buckets,
                        ufmm_range=args.trange)


def cmd_solve(args) -> int:
    grid = read_grid(args.input)
    sources = parse_sources(args.sources, grid)
    params = _params(args)
    try:
        ws = prepare(grid, sources, params)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    t0 = time.perf_counter()
    propagate(args.solver, ws, params)
    elapsed = time.perf_counter() - t0
    write_time(args.output, grid)
    print(f"solver={args.solver.value} cells={grid.size} propagation_s={elapsed:.6f}")
    return EXIT_OK


def _spec_from_args(args) -> bench.ExperimentSpec:
    return bench.ExperimentSpec(
        family=args.family, ndims=args.ndims, cells=args.cells, barriers=args.barriers,
        fmax=args.fmax, divisions=args.divisions, seed=args.seed, start=args.start,
        solvers=args.solver or list(SolverKind), runs=args.runs, scale=args.scale,
        params=_params(args) if args.buckets_given or args.epsilon else None,
    )


def cmd_bench(args) -> int:
    try:
        spec = _spec_from_args(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = bench.run_experiment(spec)
    bench.write_csv(args.output, records)
    if args.runs_output:
        bench.write_runs_csv(args.runs_output, records)
    print(bench.summary_table(records))
    return EXIT_OK


def cmd_compare(args) -> int:
    dims_a, h_a, a = read_time(args.field_a)
    dims_b, h_b, b = read_time(args.field_b)
    if dims_a != dims_b:
        raise UsageError(f"shape mismatch: {dims_a} vs {dims_b}")
    try:
        l1, linf = bench.error_norms(a, b, h_a, len(dims_a))
    except ValueError as exc:
        print(f"fields differ: {exc}")
        return EXIT_FAIL
    print(f"L1={l1:.6e} Linf={linf:.6e}")
    return EXIT_OK if (l1 <= args.tol_l1 and linf <= args.tol_linf) else EXIT_FAIL


def cmd_generate(args) -> int:
    fam = args.family
    cells = args.cells[0] if args.cells else None
    if fam == "empty":
        grid = bench.gen_empty(args.ndims, cells or 50)
    elif fam == "barriers":
        grid = bench.gen_barriers(args.ndims, (args.barriers or [9])[0], args.scale)
    elif fam == "random":
        grid = bench.gen_random(args.ndims, cells or 100, (args.fmax or [10])[0], args.seed)
    else:
        grid = bench.gen_checkerboard(args.ndims, cells or 100, (args.fmax or [10])[0],
                                      args.divisions)
    write_grid(args.output, grid)
    src = ";".join(",".join(map(str, s)) for s in grid.sources)
    print(f"wrote {args.output} dims={'x'.join(map(str, grid.dims))} h={grid.h!r} sources={src}")
    return EXIT_OK


class _BucketsAction(argparse.Action):
    def __call__(self, parser, ns, values, option_string=None):
        setattr(ns, self.dest, values)
        ns.buckets_given = True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fastmethods",
                                description="Fast methods for the Eikonal equation")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_opts(sp, multi=False):
        if multi:
            sp.add_argument("--solver", type=_solver_list, default=None,
                            help="comma-separated solver names (default: all nine)")
        else:
            sp.add_argument("--solver", type=_solver, default=SolverKind.FMM,
                            help="FMM, FMMFib, SFMM, UFMM, GMM, FIM, FSM, LSM or DDQM")
        sp.add_argument("--buckets", type=int, default=1000, action=_BucketsAction,
                        help="untidy queue bucket count")
        sp.add_argument("--trange", type=float, default=2.0, action=_BucketsAction,
                        help="untidy queue time range")
        sp.add_argument("--epsilon", type=float, default=0.0, help="FIM convergence tolerance")
        sp.set_defaults(buckets_given=False)

    def scenario_opts(sp):
        sp.add_argument("--family", choices=bench.FAMILIES, default="empty")
        sp.add_argument("--ndims", type=int, default=2)
        sp.add_argument("--cells", type=_int_list, default=None,
                        help="cells per axis (comma-separated ladder for bench)")
        sp.add_argument("--barriers", type=_int_list, default=None)
        sp.add_argument("--fmax", type=_float_list, default=None)
        sp.add_argument("--divisions", type=int, default=10)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--scale", type=float, default=1.0,
                        help="divide the reference grid sizes by this factor")

    s = sub.add_parser("solve", help="solve an EIKGRID file")
    s.add_argument("--input", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--sources", action="append",
                   help="'center', 'corner' or coordinates like 3,4;10,2 (repeatable)")
    solver_opts(s)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run a benchmark experiment and write CSV")
    scenario_opts(b)
    solver_opts(b, multi=True)
    b.add_argument("--runs", type=int, default=10)
    b.add_argument("--start", choices=("center", "corner"), default=None)
    b.add_argument("--output", required=True, help="summary CSV path")
    b.add_argument("--runs-output", default=None, help="optional long-format per-run CSV")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("compare", help="L1/Linf difference of two EIKTIME files")
    c.add_argument("field_a")
    c.add_argument("field_b")
    c.add_argument("--tol-l1", type=float, default=0.0)
    c.add_argument("--tol-linf", type=float, default=0.0)
    c.set_defaults(func=cmd_compare)

    g = sub.add_parser("generate", help="write a scenario grid as EIKGRID")
    scenario_opts(g)
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GridFormatError, OSError, ValueError) as exc:
        print(f"fastmethods {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
