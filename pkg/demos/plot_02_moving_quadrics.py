"""
A square matrix of moving planes and quadrics
=============================================

In bidegree (1, 1) the example surface has only two moving planes, two short
of a square matrix. Two moving quadrics that are not multiples of the planes
fill the gap, and the determinant is the implicit equation.
"""

from tpimplicit import (assemble_mpq, implicit_equation, load_fixture, moving_planes,
                        mpq_determinant, plane_generated_quadrics, power_check,
                        quadratic_relations, reduced_quadrics)

P = load_fixture("ex51")

V = moving_planes(P, 1, 1)
W = quadratic_relations(P, 1, 1)
Vp = plane_generated_quadrics(V)
Q = reduced_quadrics(W, Vp)
print(f"planes {V.dim}, quadrics {W.dim}, of which {Vp.dim} come from planes, {Q.dim} new")

M = assemble_mpq(P, 1, 1)
for label, row in zip(M.row_labels, M.forms()):
    print(label, [str(e) for e in row])

det = mpq_determinant(M)
print("det M_(1,1) =", det)

# an independent check: interpolate the surface through sample points
oracle = implicit_equation(P)
print("oracle degree", oracle.degF, "agrees:", power_check(det, oracle.F, 1))

# one step up, planes alone suffice
M2 = assemble_mpq(P, 2, 1)
print("M_(2,1):", M2.nrows, "x", M2.ncols, "with", M2.nquadrics, "quadrics;",
      "agrees:", power_check(mpq_determinant(M2), oracle.F, 1))
