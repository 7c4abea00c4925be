"""Search for magic squares from random starts with both models."""
import numpy as np

from drmagic import StopRule, build, verify_magic
from drmagic.bench import random_start

# the binary model gets slow from order 5 on
for name, orders in (("magic-int", (3, 4, 5)), ("magic-bin", (3, 4))):
    for n in orders:
        F = build(name, n)
        for seed in range(10):
            res, grid = F.solve(random_start(F.shape, seed), StopRule(time_cap=10))
            if grid is not None:
                break
        print(f"{name} n={n}: {res.status.value} after {res.iterations} iterations "
              f"({res.wall_time:.3f}s, seed {seed})")
        if grid is not None:
            print(grid)
            assert verify_magic(grid)
            print("line sums:", grid.sum(0), grid.sum(1), np.trace(grid), np.trace(grid[::-1]))
