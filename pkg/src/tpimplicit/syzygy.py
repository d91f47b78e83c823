"""Linear and quadratic relations among f0..f3 in a fixed bidegree.

Coordinates of a relation of bidegree (mu, nu) are flattened block-wise: one
block of (mu+1)(nu+1) coefficients per generator (x_i for planes, the pair
products in ``QUADRIC_PAIRS`` for quadrics, ``KOSZUL_PAIRS`` for second
Koszul cycles), each block in canonical monomial order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (KOSZUL_PAIRS, QUADRIC_PAIRS, BiHomPoly, MovingForm, SurfaceParam, XForm,
                      bidim, monomial_basis)
from .exactla import ExactMatrix, nullspace, pivot_columns, rank, row_basis
from .fields import Field


class ContainmentError(RuntimeError):
    """The plane-generated quadrics are not contained in the quadric space."""


@dataclass(frozen=True)
class RelationSpace:
    mu: int
    nu: int
    xdeg: int
    vectors: tuple
    field: Field
    status: str = "exact"

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def nblocks(self) -> int:
        return 4 if self.xdeg == 1 else len(QUADRIC_PAIRS)

    @property
    def ncoords(self) -> int:
        return self.nblocks * bidim(self.mu, self.nu)

    @property
    def basis(self) -> list[MovingForm]:
        return [moving_form(v, self.mu, self.nu, self.xdeg, self.field) for v in self.vectors]


@dataclass(frozen=True)
class KoszulCycleSpace:
    mu: int
    nu: int
    vectors: tuple
    field: Field

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> list[dict]:
        """Each element as ``{(i, j): BiHomPoly}`` over ``KOSZUL_PAIRS``."""
        N = bidim(self.mu, self.nu)
        out = []
        for v in self.vectors:
            out.append({pair: BiHomPoly.from_vector(v[b * N:(b + 1) * N], self.mu, self.nu, self.field)
                        for b, pair in enumerate(KOSZUL_PAIRS)})
        return out


def _generator_monomials(xdeg: int):
    if xdeg == 1:
        return [tuple(1 if k == i else 0 for k in range(4)) for i in range(4)]
    out = []
    for i, j in QUADRIC_PAIRS:
        e = [0, 0, 0, 0]
        e[i] += 1
        e[j] += 1
        out.append(tuple(e))
    return out


def moving_form(vec, mu: int, nu: int, xdeg: int, field: Field) -> MovingForm:
    N = bidim(mu, nu)
    gens = _generator_monomials(xdeg)
    entries = []
    for k in range(N):
        coeffs = {g: vec[b * N + k] for b, g in enumerate(gens) if vec[b * N + k] != 0}
        entries.append(XForm(xdeg, coeffs, field))
    return MovingForm(mu, nu, xdeg, tuple(entries))


def mult_map(polys, mu: int, nu: int) -> ExactMatrix:
    """Matrix of (g_1..g_c) -> sum g_i polys_i from R_(mu,nu)^c to R_(mu+a, nu+b)."""
    polys = list(polys)
    F = polys[0].field
    a, b = polys[0].bidegree
    tnu = nu + b
    nrows = bidim(mu + a, tnu)
    src = monomial_basis(mu, nu)
    cols = []
    for p in polys:
        if p.bidegree != (a, b):
            raise ValueError("all polynomials must share one bidegree")
        items = list(p.coeffs.items())
        for (i, j) in src:
            col = [F.zero] * nrows
            for (k, l), c in items:
                col[(i + k) * (tnu + 1) + j + l] = c
            cols.append(col)
    rows = tuple(tuple(c[r] for c in cols) for r in range(nrows))
    return ExactMatrix(F, nrows, len(cols), rows)


def _kernel_space(M: ExactMatrix, mu: int, nu: int, xdeg: int) -> RelationSpace:
    vecs = row_basis(nullspace(M), M.ncols, M.field)
    return RelationSpace(mu, nu, xdeg, tuple(tuple(v) for v in vecs), M.field)


def moving_planes(P: SurfaceParam, mu: int, nu: int) -> RelationSpace:
    """Syzygies (g0..g3) of bidegree (mu, nu): sum g_i f_i = 0."""
    if mu < 0 or nu < 0:
        return RelationSpace(mu, nu, 1, (), P.field)
    return _kernel_space(mult_map(P.f, mu, nu), mu, nu, 1)


def quadric_products(P: SurfaceParam) -> list[BiHomPoly]:
    return [P.f[i] * P.f[j] for i, j in QUADRIC_PAIRS]


def quadratic_relations(P: SurfaceParam, mu: int, nu: int) -> RelationSpace:
    """Coefficient vectors (g_ij) with sum g_ij f_i f_j = 0."""
    if mu < 0 or nu < 0:
        return RelationSpace(mu, nu, 2, (), P.field)
    return _kernel_space(mult_map(quadric_products(P), mu, nu), mu, nu, 2)


def _times_variable(vec, j: int, N: int, field: Field) -> list:
    """Quadric coordinates of x_j * L for a plane coordinate vector."""
    out = [field.zero] * (len(QUADRIC_PAIRS) * N)
    for i in range(4):
        b = QUADRIC_PAIRS.index((min(i, j), max(i, j)))
        for k in range(N):
            c = vec[i * N + k]
            if c != 0:
                out[b * N + k] = field.add(out[b * N + k], c)
    return out


def plane_generated_quadrics(V: RelationSpace) -> RelationSpace:
    """V' = span{x_j L : L in V}, inside the quadric coordinate space."""
    if V.xdeg != 1:
        raise ValueError("expected a space of moving planes")
    N = bidim(V.mu, V.nu)
    ncoords = len(QUADRIC_PAIRS) * N
    gens = [_times_variable(v, j, N, V.field) for v in V.vectors for j in range(4)]
    vecs = row_basis(gens, ncoords, V.field)
    return RelationSpace(V.mu, V.nu, 2, tuple(tuple(v) for v in vecs), V.field)


def reduced_quadrics(W: RelationSpace, Vp: RelationSpace) -> RelationSpace:
    """Rows of W whose pivots are not pivots of Vp: a complement of Vp in W."""
    if (W.mu, W.nu, W.xdeg) != (Vp.mu, Vp.nu, Vp.xdeg):
        raise ValueError("spaces live in different bidegrees")
    if Vp.dim:
        both = ExactMatrix.from_rows(list(W.vectors) + list(Vp.vectors), W.field, W.ncoords)
        if rank(both) != W.dim:
            raise ContainmentError("plane-generated quadrics are not all quadratic relations")
    taken = set(pivot_columns(Vp.vectors, W.ncoords))
    wpiv = pivot_columns(W.vectors, W.ncoords)
    keep = tuple(v for v, p in zip(W.vectors, wpiv) if p not in taken)
    if len(keep) != W.dim - Vp.dim:
        raise ContainmentError("pivot structure of V' is not compatible with W")
    return RelationSpace(W.mu, W.nu, 2, keep, W.field, W.status)


def _multiply_quadric(vec, mu: int, nu: int, d: int, field: Field):
    """Coordinates of (monomial of bidegree (d,d)) * Q for every such monomial."""
    N = bidim(mu, nu)
    bnu = nu + d
    Nb = bidim(mu + d, bnu)
    src = monomial_basis(mu, nu)
    out = []
    for (a, b) in monomial_basis(d, d):
        w = [field.zero] * (len(QUADRIC_PAIRS) * Nb)
        for blk in range(len(QUADRIC_PAIRS)):
            for k, (i, j) in enumerate(src):
                c = vec[blk * N + k]
                if c != 0:
                    w[blk * Nb + (i + a) * (bnu + 1) + j + b] = c
        out.append(w)
    return out


def saturated_quadrics(P: SurfaceParam, mu: int, nu: int, sat_cap: int = 4) -> RelationSpace:
    """Quadrics Q of bidegree (mu, nu) with m^d Q inside the plane-generated quadrics.

    ``d`` grows from 1 until the answer is unchanged for two consecutive
    values (status ``saturation-stable``) or reaches ``sat_cap``
    (status ``cap-reached``).
    """
    if sat_cap < 1:
        raise ValueError("sat_cap must be at least 1")
    F = P.field
    N = bidim(mu, nu)
    ncoords = len(QUADRIC_PAIRS) * N
    previous = None
    status = "cap-reached"
    for d in range(1, sat_cap + 1):
        big = plane_generated_quadrics(moving_planes(P, mu + d, nu + d))
        nbig = big.ncoords
        # membership in a row space == orthogonality to its kernel
        annihilator = nullspace(ExactMatrix.from_rows(big.vectors, F, nbig)) if big.dim else \
            [[F.one if i == k else F.zero for i in range(nbig)] for k in range(nbig)]
        conditions = []
        unit_images = []
        for k in range(ncoords):
            e = [F.zero] * ncoords
            e[k] = F.one
            unit_images.append(_multiply_quadric(e, mu, nu, d, F))
        for mono in range(bidim(d, d)):
            for a in annihilator:
                row = []
                for k in range(ncoords):
                    w = unit_images[k][mono]
                    row.append(F(sum(x * y for x, y in zip(w, a) if x != 0)))
                conditions.append(row)
        if conditions:
            vecs = row_basis(nullspace(ExactMatrix.from_rows(conditions, F, ncoords)), ncoords, F)
        else:
            vecs = [[F.one if i == k else F.zero for i in range(ncoords)] for k in range(ncoords)]
        current = tuple(tuple(v) for v in vecs)
        if current == previous:
            status = "saturation-stable"
            break
        previous = current
    return RelationSpace(mu, nu, 2, previous, F, status)


def koszul_map(P: SurfaceParam, mu: int, nu: int) -> ExactMatrix:
    """Matrix of a -> sum a_ij (f_i e_j - f_j e_i), from R_(mu,nu)^6 to R_(mu+m,nu+n)^4."""
    F = P.field
    N = bidim(mu, nu)
    tnu = nu + P.n
    Nt = bidim(mu + P.m, tnu)
    src = monomial_basis(mu, nu)
    rows = [[F.zero] * (len(KOSZUL_PAIRS) * N) for _ in range(4 * Nt)]
    for b, (i, j) in enumerate(KOSZUL_PAIRS):
        for sign, comp, poly in ((1, j, P.f[i]), (-1, i, P.f[j])):
            for (k, l), c in poly.coeffs.items():
                v = c if sign > 0 else F.neg(c)
                for col, (a, e) in enumerate(src):
                    rows[comp * Nt + (a + k) * (tnu + 1) + e + l][b * N + col] = v
    return ExactMatrix(F, 4 * Nt, len(KOSZUL_PAIRS) * N, tuple(tuple(r) for r in rows))


def koszul_z2(P: SurfaceParam, mu: int, nu: int) -> KoszulCycleSpace:
    """Second Koszul cycles of f with coefficients of bidegree (mu, nu)."""
    if mu < 0 or nu < 0:
        return KoszulCycleSpace(mu, nu, (), P.field)
    M = koszul_map(P, mu, nu)
    vecs = row_basis(nullspace(M), M.ncols, P.field)
    return KoszulCycleSpace(mu, nu, tuple(tuple(v) for v in vecs), P.field)
