import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tpimplicit.algebra import SurfaceParam, transpose_params
from tpimplicit.fields import GF, SMALL_PRIME
from tpimplicit.random_params import random_surface
from tpimplicit.thresholds import (BoundViolation, StabilizationError, analyze, base_degree_r,
                                   check_bounds, eta0, generator_degrees, kernel_dims, lq_table,
                                   mu0, nu0, plane_count, planes_match_formula, zeta0)

EXPECTED = {
    #        r   mu0 nu0 eta0 zeta0
    "segre": (0, 1, 1, 2, 2),
    "ex51": (6, 2, 2, 3, 2),
    "ex52": (1, 3, None, 3, None),
    "ex53": (13, 2, 2, 1, 1),
}


@pytest.mark.parametrize("name", list(EXPECTED))
def test_fixture_thresholds(name, request):
    P = request.getfixturevalue(name)
    r, mu_0, nu_0, eta_0, zeta_0 = EXPECTED[name]
    assert base_degree_r(P) == r
    assert mu0(P) == mu_0
    assert eta0(P, r=r).value == eta_0
    if nu_0 is not None:
        assert nu0(P) == nu_0
        assert zeta0(P, r=r).value == zeta_0


def test_ex51_generator_degrees(ex51):
    gd = generator_degrees(ex51.f, 3, 2, r=6)
    assert sorted(gd.degrees) == [1, 1, 2, 2]
    assert gd.total == 2 * 3 * 2 - 6
    assert gd.expected_count == 4


def test_generator_degrees_checks_the_sum(ex51):
    with pytest.raises(BoundViolation):
        generator_degrees(ex51.f, 3, 2, r=5)


def test_kernel_dims_vanish_in_low_degree(segre):
    assert kernel_dims(segre.f, 1, 1) == {0: 0, 1: 2, 2: 4, 3: 6}


def test_base_degree_rejects_common_factor():
    # a common factor t0 makes R/I grow along the fixed t-degree 2n - 1
    Q = SurfaceParam.from_strings(1, 2, ["s0*t0^2", "s1*t0^2", "s0*t0*t1", "s1*t0*t1"])
    with pytest.raises(StabilizationError):
        base_degree_r(Q)


def test_plane_count_and_lq_table():
    assert plane_count(3, 2, 6, 2) == 2
    assert lq_table(3, 2, 6, 2) == [(2, 2, 2), (3, 6, 0), (4, 10, -2), (5, 14, -4), (6, 18, -6)]


def test_check_bounds_names_the_failure():
    check_bounds(3, 2, 6, 2, 3)
    with pytest.raises(BoundViolation, match="mu0"):
        check_bounds(3, 2, 6, 7, 3)
    with pytest.raises(BoundViolation, match="eta0"):
        check_bounds(3, 2, 6, 2, 5)


def test_eta0_is_reproducible(ex51):
    a, b = eta0(ex51, seed=7), eta0(ex51, seed=7)
    assert a == b
    assert a.draws == 3 and len(a.candidates) == 3
    with pytest.raises(ValueError):
        eta0(ex51, trials=0)


def test_analyze_ex51(ex51):
    rep = analyze(ex51)
    assert (rep.r, rep.mu0, rep.nu0, rep.eta0, rep.zeta0) == (6, 2, 2, 3, 2)
    assert rep.window == [2, 3]
    assert rep.window_transposed == [2]
    assert rep.implied_product == 6
    assert json.loads(rep.to_json())["mu_degrees"] == [1, 1, 2, 2]
    assert rep.to_json() == analyze(ex51).to_json()


def test_analyze_is_symmetric_under_transposition(ex51):
    a, b = analyze(ex51), analyze(transpose_params(ex51))
    assert (a.mu0, a.nu0, a.eta0, a.zeta0) == (b.nu0, b.mu0, b.zeta0, b.eta0)
    assert a.window == b.window_transposed


@pytest.mark.parametrize("name", list(EXPECTED))
def test_plane_formula_on_fixtures(name, request):
    P = request.getfixturevalue(name)
    r = base_degree_r(P)
    for mu in range(mu0(P), 2 * P.m + 1):
        assert planes_match_formula(P, mu, r)


@settings(max_examples=25, deadline=None)
@given(shape=st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2)]),
       base=st.integers(0, 3), seed=st.integers(0, 10**6))
def test_random_surface_invariants(shape, base, seed):
    m, n = shape
    base = min(base, (m + 1) * (n + 1) - 4)
    P = random_surface(m, n, GF(SMALL_PRIME), random.Random(seed), base_points=base)
    r = base_degree_r(P)
    assert r >= base
    gd = generator_degrees(P.f, m, n, r)
    assert len(gd.degrees) == 2 * n
    mu_0 = max(gd.degrees)
    e = eta0(P, trials=1, seed=seed, r=r).value
    check_bounds(m, n, r, mu_0, e)
    assert Fraction(m) - Fraction(r, 2 * n) <= mu_0
    for mu in range(mu_0, 2 * m + 1):
        assert planes_match_formula(P, mu, r)
