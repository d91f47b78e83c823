import random

import pytest
from hypothesis import given, settings, strategies as st

from tpimplicit.algebra import XForm, parse_xform, transpose_params
from tpimplicit.detrep import (ComplexError, admissible_subsets, assemble_complex, assemble_d2,
                               assemble_mpq, complex_determinant, det_forms, eval_matrix,
                               minor_ratio, mpq_determinant)
from tpimplicit.exactla import det
from tpimplicit.fields import GF, QQ, SMALL_PRIME
from tpimplicit.oracle import implicit_equation, power_check, proportional

from printed_matrices import ex51_m11, ex51_m21


@pytest.fixture(scope="module")
def oracle_F(segre, ex51, ex52, ex53):
    return {name: implicit_equation(P).F
            for name, P in [("segre", segre), ("ex51", ex51), ("ex52", ex52), ("ex53", ex53)]}


def _random_form(rng, d, F):
    x = [XForm.variable(k, F) for k in range(4)]
    out = XForm.zero(d, F)
    for _ in range(3):
        term = XForm.constant(rng.randint(-5, 5), F)
        for _ in range(d):
            term = term * x[rng.randrange(4)]
        out = out + term
    return out


@pytest.mark.parametrize("size", [1, 2, 3, 5])
def test_det_forms_matches_pointwise_determinant(size, field):
    rng = random.Random(size)
    degs = [rng.randint(1, 2) for _ in range(size)]
    M = [[_random_form(rng, degs[c], field) for c in range(size)] for _ in range(size)]
    D = det_forms(M, field)
    assert D.xdeg == sum(degs)
    for _ in range(20):
        pt = [field(rng.randint(-30, 30)) for _ in range(4)]
        assert D.eval(pt) == det(eval_matrix(M, pt, field))


def test_det_forms_edge_cases():
    assert det_forms([], QQ) == XForm.constant(1, QQ)
    x = [XForm.variable(k) for k in range(4)]
    assert det_forms([[x[0], x[1]], [x[0], x[1]]]).is_zero()
    assert det_forms([[x[0], XForm.zero(1)], [x[2], XForm.zero(1)]]).is_zero()
    with pytest.raises(ValueError):
        det_forms([[x[0], x[1]]])
    with pytest.raises(ValueError):
        det_forms([[x[0], x[1]], [x[0] * x[1], x[2]]])


def test_segre_matrices(segre, oracle_F):
    M0 = assemble_mpq(segre, 0, 0)
    assert (M0.nrows, M0.ncols, M0.nplanes) == (1, 1, 0)
    assert mpq_determinant(M0) == parse_xform("x0*x3 - x1*x2")
    M1 = assemble_mpq(segre, 1, 0)
    assert (M1.nrows, M1.ncols, M1.nplanes) == (2, 2, 2)
    assert mpq_determinant(M1) == mpq_determinant(M0)
    assert power_check(mpq_determinant(M1), oracle_F["segre"], 1)


def test_ex51_matrices_match_printed_ones(ex51, oracle_F):
    M = assemble_mpq(ex51, 1, 1)
    assert (M.nrows, M.ncols, M.nplanes, M.nquadrics) == (4, 4, 2, 2)
    printed = _printed(ex51_m11(), [1, 1, 2, 2])
    ours = mpq_determinant(M)
    assert proportional(printed, ours) is not None
    assert power_check(ours, oracle_F["ex51"], 1)
    M6 = assemble_mpq(ex51, 2, 1)
    assert (M6.nrows, M6.ncols, M6.nplanes) == (6, 6, 6)
    printed6 = _printed(ex51_m21(), [1] * 6)
    assert proportional(printed6, mpq_determinant(M6)) is not None


def _printed(columns, degrees):
    n = len(columns)
    return det_forms([[columns[c][r] if columns[c][r] is not None else XForm.zero(degrees[c])
                       for c in range(n)] for r in range(n)])


def test_ex52_matrix(ex52, oracle_F):
    M = assemble_mpq(ex52, 2, 1)
    assert (M.nrows, M.ncols, M.nplanes, M.nquadrics) == (6, 6, 5, 1)
    D = mpq_determinant(M)
    assert D.xdeg == 7
    assert power_check(D, oracle_F["ex52"], 1)


def test_saturated_source_gives_the_same_matrix(ex51):
    a = assemble_mpq(ex51, 1, 1, "saturated")
    b = assemble_mpq(ex51, 1, 1)
    assert proportional(mpq_determinant(a), mpq_determinant(b)) is not None
    with pytest.raises(ValueError):
        assemble_mpq(ex51, 1, 1, "cubic")


def test_nonsquare_matrix_has_no_determinant(ex51):
    M = assemble_mpq(ex51, 5, 1)
    assert (M.nrows, M.ncols) == (12, 18)
    with pytest.raises(ValueError):
        mpq_determinant(M)


def test_ex53_complex(ex53, oracle_F):
    C = assemble_complex(ex53, 2)
    assert C.shape == (6, 8, 2)
    assert (C.d1.nplanes, C.d1.nquadrics) == (7, 1)
    assert C.is_complex()
    assert C.zero_block_rows == [7]
    subsets = admissible_subsets(C, 2)
    assert len(subsets) == 2
    a, b = (minor_ratio(C, B) for B in subsets)
    assert a == b == complex_determinant(C)
    assert a.xdeg == 5
    assert power_check(a, oracle_F["ex53"], 1)


def test_ex53_has_no_determinantal_matrix(ex53, oracle_F):
    M = assemble_mpq(ex53, 1, 1)
    assert M.is_square and M.nquadrics == 0
    D = mpq_determinant(M)
    assert D.xdeg == 4 and not power_check(D, oracle_F["ex53"], 1)


@pytest.mark.parametrize("name,mu", [("ex51", 6), ("ex52", 6), ("segre", 2)])
def test_complex_at_top_degree(name, mu, request, oracle_F):
    P = request.getfixturevalue(name)
    C = assemble_complex(P, mu)
    assert C.is_complex()
    assert C.d1.ncols == C.d1.nrows + C.z2_dim
    D = complex_determinant(C)
    assert power_check(D, oracle_F[name], 1)


def test_complex_in_window_has_no_second_map(ex51):
    C = assemble_complex(ex51, 3)
    assert C.z2_dim == 0
    assert admissible_subsets(C) == [()]
    assert complex_determinant(C) == mpq_determinant(C.d1)


def test_complex_refusals(ex51):
    with pytest.raises(ComplexError):
        assemble_d2(ex51, 2, 0)
    with pytest.raises(ComplexError):
        assemble_d2(ex51, 0, 1)


def test_transposed_direction(ex51, oracle_F):
    PT = transpose_params(ex51)
    M = assemble_mpq(PT, 1, 2)
    assert M.is_square
    assert power_check(mpq_determinant(M), oracle_F["ex51"], 1)


def test_matrix_json(ex51):
    data = assemble_mpq(ex51, 1, 1).to_json()
    assert (data["mu"], data["nu"]) == (1, 1)
    assert len(data["rows"]) == 4 and len(data["columns"]) == 4


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_random_window_determinants(seed):
    from tpimplicit.random_params import random_surface
    from tpimplicit.thresholds import analyze
    F = GF(SMALL_PRIME)
    P = random_surface(2, 1, F, random.Random(seed), base_points=seed % 3)
    rep = analyze(P, trials=1, seed=seed)
    forms = [mpq_determinant(assemble_mpq(P, mu - 1, 0)) for mu in rep.window]
    for D in forms:
        assert D.xdeg == rep.implied_product
        assert proportional(D, forms[0]) is not None
