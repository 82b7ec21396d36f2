"""
A small benchmark run
=====================

The harness generates the grids of one experiment family, times only the
propagation phase and compares every solver with FMM.  The same thing is
available on the command line as ``fastmethods bench``.
"""

from fastmethods import bench

spec = bench.ExperimentSpec(
    family="checkerboard",
    ndims=2,
    cells=[100],
    fmax=[10, 50, 100],
    solvers=["FMM", "SFMM", "UFMM", "GMM", "FIM", "DDQM"],
    runs=3,
)
records = bench.run_experiment(spec)
print(bench.summary_table(records))

# one row per (fmax, solver), ready for pandas or a spreadsheet
bench.write_csv("checkerboard_bench.csv", records)
print("wrote checkerboard_bench.csv")
