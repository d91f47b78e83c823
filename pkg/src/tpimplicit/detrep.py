"""Matrices of moving planes and quadrics, the length-two complex, and their determinants."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .algebra import (KOSZUL_PAIRS, S_VARS, MovingForm, SurfaceParam, XForm, _render, bidim,
                      monomial_basis)
from .exactla import ExactMatrix, det, solve
from .fields import Field, PrimeField
from .syzygy import (koszul_z2, moving_planes, plane_generated_quadrics, quadratic_relations,
                     reduced_quadrics, saturated_quadrics)
from .thresholds import mu0 as compute_mu0

_SHIFT = 8
_MASK = (1 << _SHIFT) - 1


class ComplexError(RuntimeError):
    """The assembled complex is not a resolution in the requested bidegree."""


def monomial_string(i: int, j: int, mu: int, nu: int) -> str:
    return _render([(1, (mu - i, i, nu - j, j))], S_VARS)


@dataclass(frozen=True)
class MPQMatrix:
    mu: int
    nu: int
    columns: tuple
    nplanes: int
    field: Field

    @property
    def row_labels(self) -> list[tuple[int, int]]:
        return monomial_basis(self.mu, self.nu)

    @property
    def nrows(self) -> int:
        return bidim(self.mu, self.nu)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def nquadrics(self) -> int:
        return self.ncols - self.nplanes

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, k: int, c: int) -> XForm:
        return self.columns[c].entries[k]

    def forms(self) -> list[list[XForm]]:
        return [[col.entries[k] for col in self.columns] for k in range(self.nrows)]

    def column_degrees(self) -> list[int]:
        return [col.xdeg for col in self.columns]

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "nu": self.nu,
            "rows": [monomial_string(i, j, self.mu, self.nu) for i, j in self.row_labels],
            "columns": [{"xdeg": col.xdeg, "entries": [str(e) for e in col.entries]}
                        for col in self.columns],
        }


@dataclass(frozen=True)
class ComplexPresentation:
    d1: MPQMatrix
    d2: tuple
    z2_dim: int

    @property
    def shape(self) -> tuple[int, int, int]:
        """(rank of the target, planes + quadrics, rank of the second module)."""
        return self.d1.nrows, self.d1.ncols, self.z2_dim

    @property
    def zero_block_rows(self) -> list[int]:
        return list(range(self.d1.nplanes, self.d1.ncols))

    def composition(self) -> list[list[XForm]]:
        A = self.d1.forms()
        F = self.d1.field
        out = []
        for row in A:
            line = []
            for c in range(self.z2_dim):
                acc = XForm.zero(3, F)
                for a, brow in zip(row, self.d2):
                    b = brow[c]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                line.append(acc)
            out.append(line)
        return out

    def is_complex(self) -> bool:
        return all(e.is_zero() for row in self.composition() for e in row)


def assemble_mpq(P: SurfaceParam, mu: int, nu: int, quadric_source: str = "default",
                 sat_cap: int = 4) -> MPQMatrix:
    """Columns: a basis of moving planes, then a complement of S_1*planes in the quadrics."""
    V = moving_planes(P, mu, nu)
    if quadric_source == "default":
        W = quadratic_relations(P, mu, nu)
    elif quadric_source == "saturated":
        W = saturated_quadrics(P, mu, nu, sat_cap)
    else:
        raise ValueError(f"unknown quadric source {quadric_source!r}")
    Q = reduced_quadrics(W, plane_generated_quadrics(V))
    return MPQMatrix(mu, nu, tuple(V.basis) + tuple(Q.basis), V.dim, P.field)


def _x_variable_coefficient(a: dict, k: int, F):
    """Syzygy obtained as the x_k-coefficient of the Koszul x-differential of ``a``."""
    out = []
    for j in range(4):
        if j == k:
            out.append(None)
        elif k < j:
            out.append(a[(k, j)])
        else:
            out.append(-a[(j, k)])
    return out


def assemble_d2(P: SurfaceParam, mu: int, nu: int, d1: MPQMatrix | None = None,
                mu_0: int | None = None) -> ComplexPresentation:
    """Second differential of the complex at bidegree (mu, nu) = (mu'-1, n-1), mu' >= mu0."""
    if nu != P.n - 1:
        raise ComplexError(f"the complex is only assembled in bidegrees (*, n-1); got nu={nu}")
    if mu_0 is None:
        mu_0 = compute_mu0(P)
    if mu + 1 < mu_0:
        raise ComplexError(f"mu + 1 = {mu + 1} < mu0 = {mu_0}: resolution shape unproven")
    F = P.field
    if d1 is None:
        d1 = assemble_mpq(P, mu, nu)
    V = moving_planes(P, mu, nu)
    Z = koszul_z2(P, mu, nu)
    N = bidim(mu, nu)
    basis_matrix = ExactMatrix.from_columns(V.vectors, 4 * N, F)
    xs = [XForm.variable(k, F) for k in range(4)]
    columns = []
    for a in Z.basis:
        col = [XForm.zero(1, F) for _ in range(d1.ncols)]
        for k in range(4):
            g = _x_variable_coefficient(a, k, F)
            vec = []
            for j in range(4):
                vec.extend([F.zero] * N if g[j] is None else g[j].coefficient_vector())
            coords = solve(basis_matrix, vec)
            if coords is None:
                raise ComplexError("Koszul image is not in the span of the moving planes")
            for ell, c in enumerate(coords):
                if c != 0:
                    col[ell] = col[ell] + xs[k].scale(c)
        columns.append(col)
    d2 = tuple(tuple(columns[c][row] for c in range(len(columns))) for row in range(d1.ncols))
    C = ComplexPresentation(d1, d2, Z.dim)
    if not C.is_complex():
        raise ComplexError("d1 * d2 != 0")
    return C


# -- symbolic determinants --------------------------------------------------

def _pack(e) -> int:
    return (e[0] << 3 * _SHIFT) | (e[1] << 2 * _SHIFT) | (e[2] << _SHIFT) | e[3]


def _unpack(key: int) -> tuple[int, int, int, int]:
    return ((key >> 3 * _SHIFT) & _MASK, (key >> 2 * _SHIFT) & _MASK,
            (key >> _SHIFT) & _MASK, key & _MASK)


def det_forms(M, field: Field | None = None) -> XForm:
    """Determinant of a square matrix of forms by dynamic programming over column subsets."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if field is None:
        field = M[0][0].field if n else None
    F = field
    if n == 0:
        return XForm.constant(1, F)
    p = F.p if isinstance(F, PrimeField) else None
    degrees = []
    for c in range(n):
        ds = {M[r][c].xdeg for r in range(n) if not M[r][c].is_zero()}
        if len(ds) > 1:
            raise ValueError(f"column {c} mixes degrees {sorted(ds)}")
        degrees.append(ds.pop() if ds else None)
    if None in degrees:
        return XForm.zero(sum(d or 0 for d in degrees), F)
    packed = [[{_pack(e): c for e, c in M[r][c].coeffs.items()} for c in range(n)]
              for r in range(n)]
    layer = {0: {0: F.one}}
    for r in range(n):
        new: dict[int, dict] = {}
        row = packed[r]
        for mask, poly in layer.items():
            for c in range(n):
                entry = row[c]
                if not entry or (mask >> c) & 1:
                    continue
                negative = bin(mask >> (c + 1)).count("1") & 1
                target = new.setdefault(mask | (1 << c), {})
                for k1, a in poly.items():
                    if negative:
                        a = -a
                    for k2, b in entry.items():
                        key = k1 + k2
                        target[key] = target.get(key, 0) + a * b
        layer = {}
        for mask, poly in new.items():
            if p is not None:
                poly = {k: v % p for k, v in poly.items() if v % p}
            else:
                poly = {k: v for k, v in poly.items() if v}
            if poly:
                layer[mask] = poly
        if not layer:
            break
    result = layer.get((1 << n) - 1, {})
    return XForm(sum(degrees), {_unpack(k): v for k, v in result.items()}, F)


def eval_matrix(M, pt, field: Field) -> ExactMatrix:
    return ExactMatrix.from_rows([[e.eval(pt) for e in row] for row in M], field,
                                 len(M[0]) if M else 0)


def mpq_determinant(d1: MPQMatrix) -> XForm:
    if not d1.is_square:
        raise ValueError(f"matrix is {d1.nrows}x{d1.ncols}, not square")
    return det_forms(d1.forms(), d1.field).normalized()


def admissible_subsets(C: ComplexPresentation, count: int = 1, seed: int = 0):
    """The first ``count`` row subsets B of d2, in lex order, with a nonzero minor."""
    z = C.z2_dim
    if C.d1.ncols != C.d1.nrows + z:
        raise ComplexError(f"shape {C.shape} is not that of an exact length-two complex")
    if z == 0:
        return [()]
    F = C.d1.field
    rng = random.Random(seed)
    pt = [F(rng.randint(-1000, 1000)) for _ in range(4)]
    values = [[e.eval(pt) for e in row] for row in C.d2]
    found = []
    for B in combinations(range(C.d1.nplanes), z):
        if det(ExactMatrix.from_rows([values[b] for b in B], F, z)) != 0:
            found.append(B)
            if len(found) == count:
                break
    if not found:
        raise ComplexError("no admissible subset: d2 has no nonzero maximal minor")
    return found


def minor_ratio(C: ComplexPresentation, B) -> XForm:
    """det(d1 without the columns B) / det(d2 restricted to the rows B), normalized."""
    F = C.d1.field
    A = C.d1.forms()
    keep = [c for c in range(C.d1.ncols) if c not in set(B)]
    numerator = det_forms([[row[c] for c in keep] for row in A], F)
    if not B:
        return numerator.normalized()
    denominator = det_forms([list(C.d2[b]) for b in B], F)
    if denominator.is_zero():
        raise ComplexError(f"minor of d2 on rows {tuple(B)} vanishes identically")
    try:
        quotient = numerator.divide_exact(denominator)
    except ArithmeticError as exc:
        raise ComplexError(f"inexact division for rows {tuple(B)}") from exc
    return quotient.normalized()


def complex_determinant(C: ComplexPresentation, seed: int = 0) -> XForm:
    """Determinant of the complex as a ratio of complementary minors."""
    (B,) = admissible_subsets(C, 1, seed)
    return minor_ratio(C, B)


def assemble_complex(P: SurfaceParam, mu: int, quadric_source: str = "default",
                     mu_0: int | None = None) -> ComplexPresentation:
    """The complex at bidegree (mu-1, n-1)."""
    d1 = assemble_mpq(P, mu - 1, P.n - 1, quadric_source)
    return assemble_d2(P, mu - 1, P.n - 1, d1, mu_0)
