"""
Random surfaces over a prime field
==================================

Random parameterizations with prescribed base points, worked over GF(p) for
speed. The plane count, the threshold bounds and squareness in the window
hold for every draw.
"""

import random

from tpimplicit import GF, analyze, assemble_mpq, moving_planes
from tpimplicit.random_params import random_surface

F = GF(2**31 - 1)
rng = random.Random(7)
for base_points in range(5):
    P = random_surface(2, 2, F, rng, base_points=base_points)
    rep = analyze(P, trials=3, seed=base_points)
    planes = [moving_planes(P, mu - 1, P.n - 1).dim for mu in range(rep.mu0, 2 * P.m + 1)]
    shapes = [assemble_mpq(P, mu - 1, P.n - 1) for mu in rep.window]
    print(f"r={rep.r} mu0={rep.mu0} eta0={rep.eta0} planes={planes} "
          f"window shapes={[(M.nrows, M.ncols) for M in shapes]}")
