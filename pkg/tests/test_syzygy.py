import pytest
import sympy as sp

from tpimplicit.algebra import QUADRIC_PAIRS, MovingForm, XForm, bidim, monomial_basis
from tpimplicit.exactla import ExactMatrix, rank
from tpimplicit.fields import GF, QQ
from tpimplicit.syzygy import (ContainmentError, RelationSpace, koszul_map, koszul_z2,
                               moving_planes, mult_map, plane_generated_quadrics,
                               quadratic_relations, reduced_quadrics, saturated_quadrics)
from tpimplicit.thresholds import base_degree_r, mu0, plane_count

from printed_matrices import ex51_m11, ex51_m21

s0, s1, t0, t1 = sp.symbols("s0 s1 t0 t1")


def to_sympy(p):
    return sum(int(c) * s0**(p.sdeg - i) * s1**i * t0**(p.tdeg - j) * t1**j
               for (i, j), c in p.coeffs.items())


def brute_force_kernel_dim(polys, mu, nu):
    """Kernel dimension of (g_i) -> sum g_i p_i via sympy, independent of mult_map."""
    monos = [s0**(mu - i) * s1**i * t0**(nu - j) * t1**j for i, j in monomial_basis(mu, nu)]
    products = [sp.Poly(sp.expand(m * p), s0, s1, t0, t1) for p in polys for m in monos]
    keys = sorted({k for q in products for k in q.as_dict()})
    A = sp.Matrix([[q.as_dict().get(k, 0) for q in products] for k in keys])
    return A.cols - A.rank()


def test_mult_map_identity():
    from tpimplicit.algebra import BiHomPoly
    one = BiHomPoly(0, 0, {(0, 0): 1})
    assert mult_map([one], 1, 1) == ExactMatrix.identity(4)


def test_mult_map_segre_rank(segre):
    M = mult_map(segre.f, 1, 0)
    assert M.shape == (6, 8)
    assert rank(M) == 6
    assert brute_force_kernel_dim([to_sympy(p) for p in segre.f], 1, 0) == 2


def test_mult_map_ex51_shape(ex51):
    assert mult_map(ex51.f, 1, 1).shape == (20, 16)


def test_moving_planes_segre(segre):
    assert moving_planes(segre, 0, 0).dim == 0
    V = moving_planes(segre, 1, 0)
    assert V.dim == 2
    x = [XForm.variable(k) for k in range(4)]
    expected = [MovingForm(1, 0, 1, (-x[2], x[0])), MovingForm(1, 0, 1, (-x[3], x[1]))]
    assert V.basis == expected


def test_moving_planes_ex51(ex51):
    assert moving_planes(ex51, 2, 1).dim == 6 == plane_count(3, 2, 6, 3)


def test_printed_plane_columns_are_relations(ex51):
    cols = ex51_m21()
    for col in cols:
        entries = tuple(e if e is not None else XForm.zero(1) for e in col)
        assert MovingForm(2, 1, 1, entries).substitute(ex51.f).is_zero()


def _coordinates(form: MovingForm):
    N = bidim(form.mu, form.nu)
    if form.xdeg == 1:
        gens = [tuple(1 if k == i else 0 for k in range(4)) for i in range(4)]
    else:
        gens = []
        for i, j in QUADRIC_PAIRS:
            e = [0] * 4
            e[i] += 1
            e[j] += 1
            gens.append(tuple(e))
    vec = [0] * (len(gens) * N)
    for k, entry in enumerate(form.entries):
        for e, c in entry.coeffs.items():
            vec[gens.index(e) * N + k] = c
    return vec


def test_quadratic_relations_segre(segre):
    W = quadratic_relations(segre, 0, 0)
    assert W.dim == 1
    assert W.basis[0].entries[0] == XForm(2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    assert brute_force_kernel_dim([to_sympy(segre.f[i] * segre.f[j]) for i, j in QUADRIC_PAIRS],
                                  0, 0) == 1


def test_printed_quadric_columns_lie_in_W(ex51):
    W = quadratic_relations(ex51, 1, 1)
    cols = ex51_m11()
    for col in cols[2:]:
        entries = tuple(e if e is not None else XForm.zero(2) for e in col)
        form = MovingForm(1, 1, 2, entries)
        assert form.substitute(ex51.f).is_zero()
        stacked = ExactMatrix.from_rows(list(W.vectors) + [_coordinates(form)], QQ)
        assert rank(stacked) == W.dim


def test_plane_generated_quadrics(segre, ex51):
    assert plane_generated_quadrics(moving_planes(segre, 0, 0)).dim == 0
    W = quadratic_relations(ex51, 1, 1)
    Vp = plane_generated_quadrics(moving_planes(ex51, 1, 1))
    assert Vp.dim == W.dim - 2


def test_reduced_quadrics(segre, ex53):
    W = quadratic_relations(segre, 0, 0)
    Vp = plane_generated_quadrics(moving_planes(segre, 0, 0))
    assert reduced_quadrics(W, Vp).vectors == W.vectors
    assert reduced_quadrics(W, W).dim == 0
    W3 = quadratic_relations(ex53, 1, 2)
    Vp3 = plane_generated_quadrics(moving_planes(ex53, 1, 2))
    assert reduced_quadrics(W3, Vp3).dim == 1


def test_reduced_quadrics_detects_non_containment(segre):
    W = quadratic_relations(segre, 0, 0)
    bogus = RelationSpace(0, 0, 2, ((1,) + (0,) * 9,), QQ)
    with pytest.raises(ContainmentError):
        reduced_quadrics(W, bogus)


def test_quadrics_contain_variable_multiples_of_planes(ex52):
    V = moving_planes(ex52, 2, 1)
    W = quadratic_relations(ex52, 2, 1)
    Vp = plane_generated_quadrics(V)
    both = ExactMatrix.from_rows(list(W.vectors) + list(Vp.vectors), QQ)
    assert rank(both) == W.dim


def test_saturated_quadrics_agree_with_relations(segre, ex53):
    F = GF()
    P = ex53.over(F)
    S = saturated_quadrics(P, 1, 2)
    assert S.status == "saturation-stable"
    assert S.vectors == quadratic_relations(P, 1, 2).vectors
    for mu, nu in [(0, 0), (1, 0), (1, 1)]:
        assert saturated_quadrics(segre, mu, nu).vectors == quadratic_relations(segre, mu, nu).vectors


def test_saturated_quadrics_rejects_bad_cap(segre):
    with pytest.raises(ValueError):
        saturated_quadrics(segre, 0, 0, sat_cap=0)


def test_koszul_z2(segre, ex53, ex51):
    assert koszul_z2(segre, 0, 0).dim == 0
    Z = koszul_z2(ex53, 1, 2)
    assert Z.dim == 2
    M = koszul_map(ex53, 1, 2)
    for v in Z.vectors:
        assert all(x == 0 for x in M.apply(v))
    for mu in (2, 3):
        assert koszul_z2(ex51, mu - 1, ex51.n - 1).dim == 0


def test_koszul_cycles_satisfy_relation(ex53):
    f = ex53.f
    for a in koszul_z2(ex53, 1, 2).basis:
        for j in range(4):
            total = None
            for (i, k), poly in a.items():
                term = None
                if k == j:
                    term = poly * f[i]
                elif i == j:
                    term = -(poly * f[k])
                if term is not None:
                    total = term if total is None else total + term
            assert total.is_zero()


@pytest.mark.parametrize("name", ["segre", "ex51", "ex52", "ex53"])
def test_relation_spaces_follow_the_parameterization(name, request):
    P = request.getfixturevalue(name)
    m, n = P.m, P.n
    r = base_degree_r(P)
    mu_0 = mu0(P)
    for mu in range(mu_0, mu_0 + 2):
        V = moving_planes(P, mu - 1, n - 1)
        W = quadratic_relations(P, mu - 1, n - 1)
        Vp = plane_generated_quadrics(V)
        Q = reduced_quadrics(W, Vp)
        assert W.dim == Vp.dim + Q.dim
        assert V.dim == plane_count(m, n, r, mu)
        for L in V.basis + W.basis:
            assert L.substitute(P.f).is_zero()


@pytest.mark.parametrize("p", [1000003, 2147483647, 4611686018427387847])
@pytest.mark.parametrize("name", ["segre", "ex51", "ex53"])
def test_dimensions_field_independent(name, p, request):
    P = request.getfixturevalue(name)
    Pp = P.over(GF(p))
    for mu, nu in [(1, P.n - 1), (2, P.n - 1), (1, 1)]:
        assert moving_planes(P, mu, nu).dim == moving_planes(Pp, mu, nu).dim
        assert quadratic_relations(P, mu, nu).dim == quadratic_relations(Pp, mu, nu).dim
        assert koszul_z2(P, mu, nu).dim == koszul_z2(Pp, mu, nu).dim
