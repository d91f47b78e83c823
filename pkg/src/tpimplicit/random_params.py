"""Random parameterizations, optionally forced through prescribed simple base points."""
from __future__ import annotations

import random

from .algebra import BiHomPoly, SurfaceParam, bidim, monomial_basis
from .exactla import ExactMatrix, nullspace
from .fields import QQ, Field
from .thresholds import StabilizationError, base_degree_r

COEFF_BOUND = 50


def _element(field: Field, rng: random.Random):
    if field == QQ:
        return field(rng.randint(-COEFF_BOUND, COEFF_BOUND))
    return field(rng.randrange(field.characteristic))


def random_surface(m: int, n: int, field: Field = QQ, rng: random.Random | None = None,
                   base_points: int = 0, attempts: int = 20) -> SurfaceParam:
    """Four random forms of bidegree (m, n) vanishing at ``base_points`` random points.

    Points are drawn on the chart s0 = t0 = 1. Draws whose forms are dependent
    or share a factor are rejected.
    """
    rng = rng or random.Random(0)
    N = bidim(m, n)
    if base_points > N - 4:
        raise ValueError(f"at most {N - 4} base points fit in bidegree {(m, n)}")
    for _ in range(attempts):
        points = [(_element(field, rng), _element(field, rng)) for _ in range(base_points)]
        conditions = []
        for a, b in points:
            conditions.append([BiHomPoly(m, n, {mono: 1}, field).eval((1, a), (1, b))
                               for mono in monomial_basis(m, n)])
        if conditions:
            space = nullspace(ExactMatrix.from_rows(conditions, field, N))
        else:
            space = [[field.one if i == k else field.zero for i in range(N)] for k in range(N)]
        polys = []
        for _ in range(4):
            vec = [field.zero] * N
            for v in space:
                c = _element(field, rng)
                vec = [field.add(x, field.mul(c, y)) for x, y in zip(vec, v)]
            polys.append(BiHomPoly.from_vector(vec, m, n, field))
        try:
            P = SurfaceParam(m, n, tuple(polys), field)
            base_degree_r(P)
        except (ValueError, StabilizationError):
            continue
        return P
    raise RuntimeError("could not draw a valid parameterization")
