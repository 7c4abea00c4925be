"""A small success-rate table plus cumulative solve-time curves.

Writes trials.csv, summary.csv and cumfreq.csv into ./bench_out, and a plot
when matplotlib is available.
"""
import os

import numpy as np

from drmagic import bench

plan = bench.ExperimentPlan(orders=[3, 4], formulations=["magic-int", "magic-bin"],
                            trials_per_cell=10, time_cap=2.0, base_seed=0)
records, errors = bench.run_plan(plan)

os.makedirs("bench_out", exist_ok=True)
bench.write_trials(records, "bench_out/trials.csv")
bench.write_summary(records, "bench_out/summary.csv")
bench.write_cumulative(records, "bench_out/cumfreq.csv")

for row in bench.summarize(records):
    print(row)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    grid = bench.default_time_grid(plan.time_cap)
    for (name, n) in sorted({(r.formulation, r.n) for r in records}):
        cell = [r for r in records if (r.formulation, r.n) == (name, n)]
        curve = np.array(bench.cumulative_frequency(cell, grid))
        plt.semilogx(curve[:, 0], curve[:, 1], label=f"{name} n={n}")
    plt.xlabel("seconds")
    plt.ylabel("fraction solved")
    plt.legend()
    plt.savefig("bench_out/cumfreq.png", dpi=120)
    print("wrote bench_out/cumfreq.png")
