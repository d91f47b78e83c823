"""Dense exact linear algebra over QQ and GF(p).

Pivoting is deterministic (first nonzero entry, top-down, per column), so the
reduced row echelon form and every basis derived from it are reproducible.
Over QQ, rows are cleared of denominators and reduced with fraction-free
(Bareiss) elimination before back-substitution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .fields import QQ, Field, PrimeField

# GF(p) below this bound is eliminated with int64 numpy arrays
_NUMPY_PRIME_BOUND = 2**31


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("row data does not match the declared shape")

    @classmethod
    def from_rows(cls, rows, field: Field = QQ, ncols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(field(v) for v in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols, nrows: int, field: Field = QQ) -> "ExactMatrix":
        cols = list(cols)
        rows = tuple(tuple(field(c[i]) for c in cols) for i in range(nrows))
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "ExactMatrix":
        return cls(field, nrows, ncols, tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls(field, n, n, tuple(
            tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.ncols, self.nrows,
                           tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self.field.check(other.field)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        cols = other.columns()
        out = []
        for r in self.rows:
            out.append(tuple(F(sum(a * b for a, b in zip(r, c))) for c in cols))
        return ExactMatrix(F, self.nrows, other.ncols, tuple(out))

    def apply(self, v) -> list:
        F = self.field
        return [F(sum(a * b for a, b in zip(r, v))) for r in self.rows]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


def _as_matrix(M, field: Field | None = None) -> ExactMatrix:
    if isinstance(M, ExactMatrix):
        return M
    return ExactMatrix.from_rows(M, field or QQ)


# -- elimination kernels ----------------------------------------------------

def _rref_modp_python(rows: list[list[int]], ncols: int, p: int):
    rows = [list(r) for r in rows]
    n = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = rows[r]
        prow = prow[:c] + [v * inv % p for v in prow[c:]]
        rows[r] = prow
        tail = prow[c:]
        for i in range(n):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    rows[i] = row[:c] + [(a - f * b) % p for a, b in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref_modp_numpy(rows, ncols: int, p: int):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
    n = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        f = A[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[np.ix_(hit, np.arange(c, ncols))] = (
                A[hit, c:] - np.outer(f[hit], A[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return [[int(v) for v in row] for row in A], pivots


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for v in r:
            den = lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in r])
    return out


def _bareiss_forward(A: list[list[int]], ncols: int):
    """Fraction-free forward elimination in place; returns pivot columns."""
    n = len(A)
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        pr = next((i for i in range(r, n) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        prow = A[r]
        pv = prow[c]
        for i in range(r + 1, n):
            row = A[i]
            f = row[c]
            if f:
                row[c:] = [(pv * a - f * b) // prev for a, b in zip(row[c:], prow[c:])]
            elif pv != prev:
                row[c:] = [pv * a // prev for a in row[c:]]
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def _content_reduce(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    return [v // g for v in row] if g > 1 else row


def _rref_rational(rows, ncols: int):
    A = _integer_rows(rows)
    pivots = _bareiss_forward(A, ncols)
    rk = len(pivots)
    U = [_content_reduce(A[k]) for k in range(rk)]
    for k in range(rk - 1, -1, -1):
        c = pivots[k]
        pk = U[k]
        for i in range(k):
            f = U[i][c]
            if f:
                pv = pk[c]
                U[i] = _content_reduce([pv * a - f * b for a, b in zip(U[i], pk)])
    R = []
    for k in range(rk):
        pv = U[k][pivots[k]]
        R.append([Fraction(v, pv) for v in U[k]])
    R.extend([Fraction(0)] * ncols for _ in range(len(rows) - rk))
    return R, pivots


def rref_rows(rows, ncols: int, field: Field):
    """RREF of raw row data; returns ``(rows, pivots)`` with zero rows kept at the bottom."""
    rows = list(rows)
    if not rows or ncols == 0:
        return [list(r) for r in rows], []
    if isinstance(field, PrimeField):
        if field.p < _NUMPY_PRIME_BOUND:
            return _rref_modp_numpy(rows, ncols, field.p)
        return _rref_modp_python(rows, ncols, field.p)
    return _rref_rational(rows, ncols)


# -- public API -------------------------------------------------------------

def rref(M) -> tuple[ExactMatrix, list[int], int]:
    M = _as_matrix(M)
    R, pivots = rref_rows(M.rows, M.ncols, M.field)
    return (ExactMatrix(M.field, M.nrows, M.ncols, tuple(tuple(r) for r in R)),
            pivots, len(pivots))


def rank(M) -> int:
    M = _as_matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if isinstance(M.field, PrimeField):
        return len(rref_rows(M.rows, M.ncols, M.field)[1])
    A = _integer_rows(M.rows)
    return len(_bareiss_forward(A, M.ncols))


def nullspace(M) -> list[list]:
    """Canonical right-kernel vectors: one per free column, ascending."""
    M = _as_matrix(M)
    F = M.field
    R, pivots = rref_rows(M.rows, M.ncols, F)
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [F.zero] * M.ncols
        v[f] = F.one
        for k, c in enumerate(pivots):
            v[c] = F.neg(F(R[k][f]))
        basis.append(v)
    return basis


def kernel_basis(M) -> ExactMatrix:
    """Matrix whose columns are the canonical nullspace basis."""
    M = _as_matrix(M)
    return ExactMatrix.from_columns(nullspace(M), M.ncols, M.field)


def solve(M, b) -> list | None:
    """Coordinates ``c`` with ``M c = b``, or ``None`` when inconsistent."""
    M = _as_matrix(M)
    F = M.field
    b = [F(v) for v in b]
    if len(b) != M.nrows:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(r) + [bv] for r, bv in zip(M.rows, b)]
    R, pivots = rref_rows(aug, M.ncols + 1, F)
    if pivots and pivots[-1] == M.ncols:
        return None
    c = [F.zero] * M.ncols
    for k, col in enumerate(pivots):
        c[col] = F(R[k][M.ncols])
    return c


def row_basis(vectors, ncols: int, field: Field) -> list[list]:
    """Reduced-echelon basis of the span of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return []
    R, pivots = rref_rows(vectors, ncols, field)
    return [[field(v) for v in R[k]] for k in range(len(pivots))]


def pivot_columns(vectors, ncols: int) -> list[int]:
    """Pivot positions of vectors already in reduced-echelon form."""
    out = []
    for v in vectors:
        out.append(next(i for i, x in enumerate(v) if x != 0))
    return out


def det(M):
    """Determinant of a square scalar matrix."""
    M = _as_matrix(M)
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    F = M.field
    if n == 0:
        return F.one
    if isinstance(F, PrimeField):
        p = F.p
        A = [list(r) for r in M.rows]
        d = 1
        for c in range(n):
            pr = next((i for i in range(c, n) if A[i][c]), None)
            if pr is None:
                return 0
            if pr != c:
                A[c], A[pr] = A[pr], A[c]
                d = -d
            pv = A[c][c]
            d = d * pv % p
            inv = pow(pv, -1, p)
            for i in range(c + 1, n):
                f = A[i][c] * inv % p
                if f:
                    A[i] = [(a - f * b) % p for a, b in zip(A[i], A[c])]
        return d % p
    den = 1
    A = []
    for r in M.rows:
        rd = 1
        for v in r:
            rd = lcm(rd, Fraction(v).denominator)
        den *= rd
        A.append([int(Fraction(v) * rd) for v in r])
    sign = 1
    prev = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            sign = -sign
        pv = A[c][c]
        for i in range(c + 1, n):
            row = A[i]
            f = row[c]
            row[c:] = [(pv * a - f * b) // prev for a, b in zip(row[c:], A[c][c:])]
        prev = pv
    return Fraction(sign * A[n - 1][n - 1], den)
