"""
When no square matrix exists
============================

For the quintic below eta0 = 1 < mu0 = 2, so no bidegree gives a square
matrix. The matrix of planes and quadrics is then the first map of a short
exact complex, and the implicit equation is a ratio of complementary minors.
"""

from tpimplicit import analyze, implicit_equation, load_fixture, power_check
from tpimplicit.detrep import admissible_subsets, assemble_complex, minor_ratio

P = load_fixture("ex53")
report = analyze(P)
print("r =", report.r, " mu0 =", report.mu0, " eta0 =", report.eta0, " window:", report.window)

C = assemble_complex(P, report.mu0)
target, columns, second = C.shape
print(f"complex: {target} <- {C.d1.nplanes} planes + {C.d1.nquadrics} quadric <- {second}")
print("d1 * d2 = 0:", C.is_complex(), " zero rows of d2:", C.zero_block_rows)

# any row subset with a nonzero minor of d2 gives the same ratio
F = implicit_equation(P).F
for B in admissible_subsets(C, 2):
    ratio = minor_ratio(C, B)
    print("rows", B, "degree", ratio.xdeg, "proportional to F:", power_check(ratio, F, 1))
