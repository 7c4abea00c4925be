"""Solve a Sudoku with the one-hot (binary) model."""
import numpy as np

from drmagic import StopRule, build
from drmagic.bench import random_start

puzzle = np.array([
    [0, 2, 0, 5, 0, 1, 0, 9, 0],
    [8, 0, 0, 2, 0, 3, 0, 0, 6],
    [0, 3, 0, 0, 6, 0, 0, 7, 0],
    [0, 0, 1, 0, 0, 0, 6, 0, 0],
    [5, 4, 0, 0, 0, 0, 0, 1, 9],
    [0, 0, 2, 0, 0, 0, 7, 0, 0],
    [0, 9, 0, 0, 3, 0, 0, 8, 0],
    [2, 0, 0, 8, 0, 4, 0, 0, 7],
    [0, 1, 0, 9, 0, 7, 0, 6, 0],
])

F = build("sudoku-bin", prefill=puzzle)
print(len(F.sets), "constraint sets, cube shape", F.shape)

trace = []
res, grid = F.solve(random_start(F.shape, 0), StopRule(time_cap=300),
                    callback=lambda k, x: trace.append(np.abs(x).max()))
print(res.status.value, "after", res.iterations, "iterations", f"({res.wall_time:.2f}s)")
print(grid)
