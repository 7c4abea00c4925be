"""Douglas-Rachford on two lines in the plane.

Two crossing lines: the shadow P_A(x) walks onto the crossing point.
Two parallel lines: there is nothing to find, and the iterates run off
to infinity at a steady pace while the shadow stays put.
"""
import numpy as np

from drmagic import constraints as cs
from drmagic.core import dr_step

A = cs.hyperplane([0.0, 1.0], 0.0)    # x2 = 0
B = cs.hyperplane([1.0, -1.0], 1.0)   # x1 - x2 = 1, meets A at (1, 0)

x = np.array([5.0, -3.0])
for k in range(12):
    print(f"{k:3d}  x = {x}  shadow = {A(x)}")
    x = dr_step(A, B, x)

# parallel lines one unit apart
A = cs.hyperplane([0.0, 1.0], 0.0)
B = cs.hyperplane([0.0, 1.0], 1.0)
x = np.array([0.3, 0.4])
norms = []
for k in range(1000):
    x = dr_step(A, B, x)
    norms.append(np.linalg.norm(x))
print("parallel: |x| after 10, 100, 1000 steps:", norms[9], norms[99], norms[-1])
print("growth per step ~", np.mean(np.diff(norms[-100:])))   # the gap between the lines
