"""Fill the blanks (zeros) of a partially given magic square."""
import numpy as np

from drmagic import StopRule, build
from drmagic.bench import random_start

partial = np.array([
    [16, 0, 0, 13],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [4, 0, 0, 1],
])

for name in ("magic-int", "magic-bin"):
    F = build(name, 4, prefill=partial)
    for seed in range(20):
        res, grid = F.solve(random_start(F.shape, seed), StopRule(time_cap=20))
        if grid is not None:
            break
    print(name, res.status.value, "seed", seed, "iterations", res.iterations)
    print(grid)
    if grid is not None:
        assert np.all(grid[partial > 0] == partial[partial > 0])
