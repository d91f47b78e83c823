"""
Thresholds of a parameterization
================================

A surface of bidegree (3, 2) with six simple base points. We read off the
degree r of the base scheme, the syzygy degrees and the range of mu where a
square matrix of moving planes and quadrics exists.
"""

from tpimplicit import analyze, load_fixture

P = load_fixture("ex51")
for poly in P.f:
    print(poly)

# the base scheme and the generator degrees of the syzygy module in t-degree n-1
report = analyze(P, trials=3, seed=0)
print("r =", report.r)
print("syzygy degrees:", report.mu_degrees, "sum =", sum(report.mu_degrees))

# from mu0 on there are exactly 2n(mu-m)+r moving planes; inside the window
# n*mu minus that count is the number of quadrics needed for a square matrix
print("mu0 =", report.mu0, " eta0 =", report.eta0, " window:", report.window)
for mu, planes, missing in report.lq_table:
    note = "quadrics needed" if mu in report.window else "(above the window)"
    print(f"  mu={mu}: {planes} planes, n*mu - planes = {missing} {note}")

# exchanging s and t gives the other family of thresholds
print("nu0 =", report.nu0, " zeta0 =", report.zeta0, " window:", report.window_transposed)
