"""Base-scheme degree, generator degrees of the syzygy module and threshold degrees."""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .algebra import BiHomPoly, SurfaceParam, bidim, transpose_params
from .exactla import ExactMatrix, rank
from .syzygy import moving_planes, mult_map

#: coefficient range for the random combinations f'
DRAW_BOUND = 1000
MAX_REDRAWS = 10


class StabilizationError(ValueError):
    """The base-scheme degree did not stabilize: the f_i share a common factor."""


class BoundViolation(AssertionError):
    """A proven inequality or identity failed on a computed value."""


@dataclass(frozen=True)
class GeneratorDegrees:
    degrees: tuple
    expected_count: int
    source: str

    @property
    def total(self) -> int:
        return sum(self.degrees)


@dataclass(frozen=True)
class Eta0Estimate:
    value: int
    agreed: bool
    draws: int
    candidates: tuple
    degrees: tuple


@dataclass
class AnalysisReport:
    m: int
    n: int
    r: int
    mu0: int
    nu0: int
    eta0: int
    zeta0: int
    eta0_agreed: bool
    zeta0_agreed: bool
    eta0_draws: int
    zeta0_draws: int
    mu_degrees: list
    nu_degrees: list
    eta_degrees: list
    zeta_degrees: list
    degsum_check: bool
    bounds_check: bool
    lq_table: list
    lq_table_transposed: list
    window: list
    window_transposed: list
    implied_product: int
    seed: int = 0
    trials: int = 3

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


def _kernel_dim(polys, e: int, n: int) -> int:
    if e < 0:
        return 0
    M = mult_map(polys, e, n - 1)
    return M.ncols - rank(M)


def base_degree_r(P: SurfaceParam) -> int:
    """Degree of the base scheme, from the stabilized Hilbert function of R/I."""
    m, n = P.m, P.n
    values = []
    for mu in (2 * m, 2 * m + 1):
        M = mult_map(P.f, mu - 1, n - 1)
        values.append(bidim(mu - 1 + m, 2 * n - 1) - rank(M))
    if values[0] != values[1]:
        raise StabilizationError(
            f"HF(R/I) at mu=2m and 2m+1 differ ({values[0]} != {values[1]}); "
            "the polynomials have a common factor")
    return values[0]


def kernel_dims(polys, m: int, n: int) -> dict[int, int]:
    """Dimensions of syzygies of bidegree (e, n-1) for e = 0 .. 2m+1."""
    return {e: _kernel_dim(polys, e, n) for e in range(0, 2 * m + 2)}


def generator_degrees(polys, m: int, n: int, r: int | None = None,
                      source: str = "f") -> GeneratorDegrees:
    """Degrees of a minimal basis of the free k[s0,s1]-module of syzygies of t-degree n-1."""
    polys = list(polys)
    k = kernel_dims(polys, m, n)
    degrees = []
    for e in range(0, 2 * m + 2):
        count = k[e] - 2 * k.get(e - 1, 0) + k.get(e - 2, 0)
        if count < 0:
            raise BoundViolation(f"negative second difference {count} at degree {e}")
        degrees.extend([e] * count)
    # rank of the module is (c - 2) n for c generic generators of an ideal of depth 2
    expected = (len(polys) - 2) * n
    gd = GeneratorDegrees(tuple(degrees), expected, source)
    if len(degrees) != expected:
        raise BoundViolation(f"found {len(degrees)} generators, expected {expected}")
    if r is not None and gd.total != 2 * m * n - r:
        raise BoundViolation(f"sum of generator degrees {gd.total} != 2mn - r = {2 * m * n - r}")
    return gd


def mu0(P: SurfaceParam) -> int:
    return max(generator_degrees(P.f, P.m, P.n).degrees)


def nu0(P: SurfaceParam) -> int:
    return mu0(transpose_params(P))


def _draw_combination(P: SurfaceParam, rng: random.Random):
    F = P.field
    for _ in range(MAX_REDRAWS + 1):
        coeffs = [[rng.choice((-1, 1)) * rng.randint(1, DRAW_BOUND) for _ in range(4)]
                  for _ in range(3)]
        fp = []
        for row in coeffs:
            acc = BiHomPoly(P.m, P.n, {}, F)
            for c, f in zip(row, P.f):
                acc = acc + f.scale(c)
            fp.append(acc)
        span = ExactMatrix.from_rows([p.coefficient_vector() for p in fp], F)
        if rank(span) == 3:
            return fp
    raise RuntimeError(f"no nondegenerate combination after {MAX_REDRAWS} redraws")


def eta0(P: SurfaceParam, trials: int = 3, seed: int = 0, r: int | None = None) -> Eta0Estimate:
    """Smallest syzygy degree of three random combinations, maximized over trials."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    candidates = []
    degree_sets = []
    for _ in range(trials):
        fp = _draw_combination(P, rng)
        gd = generator_degrees(fp, P.m, P.n, r, source=f"fprime({seed})")
        candidates.append(min(gd.degrees))
        degree_sets.append(gd.degrees)
    best = max(candidates)
    chosen = degree_sets[candidates.index(best)]
    return Eta0Estimate(best, len(set(candidates)) == 1, trials, tuple(candidates), chosen)


def zeta0(P: SurfaceParam, trials: int = 3, seed: int = 0, r: int | None = None) -> Eta0Estimate:
    return eta0(transpose_params(P), trials, seed, r)


def plane_count(m: int, n: int, r: int, mu: int) -> int:
    """Expected number of moving planes of bidegree (mu-1, n-1) once mu >= mu0."""
    return 2 * n * (mu - m) + r


def lq_table(m: int, n: int, r: int, mu_start: int) -> list[tuple[int, int, int]]:
    rows = []
    for mu in range(mu_start, 2 * m + 1):
        l = plane_count(m, n, r, mu)
        rows.append((mu, l, n * mu - l))
    return rows


def check_bounds(m: int, n: int, r: int, mu_0: int, eta_0: int) -> None:
    """Raise ``BoundViolation`` naming the first failed inequality."""
    lo = Fraction(m) - Fraction(r, 2 * n)
    hi = min(2 * m, 2 * m * n - r)
    if not lo <= mu_0 <= hi:
        raise BoundViolation(f"m - r/2n <= mu0 <= min(2m, 2mn - r) fails: {lo} <= {mu_0} <= {hi}")
    elo, ehi = 2 * m - r, Fraction(2 * m) - Fraction(r, n)
    if not elo <= eta_0 <= ehi:
        raise BoundViolation(f"2m - r <= eta0 <= 2m - r/n fails: {elo} <= {eta_0} <= {ehi}")
    for mu, l, q in lq_table(m, n, r, mu_0):
        if mu < ehi and q <= 0:
            raise BoundViolation(f"q_mu > 0 for mu0 <= mu < 2m - r/n fails at mu={mu} (q={q})")


def analyze(P: SurfaceParam, trials: int = 3, seed: int = 0) -> AnalysisReport:
    """Thresholds, degree bookkeeping and the determinantal window of ``P``."""
    m, n = P.m, P.n
    r = base_degree_r(P)
    PT = transpose_params(P)
    g = generator_degrees(P.f, m, n, r, "f")
    gt = generator_degrees(PT.f, n, m, r, "f-transposed")
    e = eta0(P, trials, seed, r)
    z = eta0(PT, trials, seed, r)
    mu_0, nu_0 = max(g.degrees), max(gt.degrees)
    check_bounds(m, n, r, mu_0, e.value)
    check_bounds(n, m, r, nu_0, z.value)
    return AnalysisReport(
        m=m, n=n, r=r, mu0=mu_0, nu0=nu_0, eta0=e.value, zeta0=z.value,
        eta0_agreed=e.agreed, zeta0_agreed=z.agreed, eta0_draws=e.draws, zeta0_draws=z.draws,
        mu_degrees=sorted(g.degrees), nu_degrees=sorted(gt.degrees),
        eta_degrees=sorted(e.degrees), zeta_degrees=sorted(z.degrees),
        degsum_check=True, bounds_check=True,
        lq_table=[list(t) for t in lq_table(m, n, r, mu_0)],
        lq_table_transposed=[list(t) for t in lq_table(n, m, r, nu_0)],
        window=list(range(mu_0, e.value + 1)),
        window_transposed=list(range(nu_0, z.value + 1)),
        implied_product=2 * m * n - r, seed=seed, trials=trials)


def planes_match_formula(P: SurfaceParam, mu: int, r: int) -> bool:
    """dim of moving planes of bidegree (mu-1, n-1) equals 2n(mu-m)+r."""
    return moving_planes(P, mu - 1, P.n - 1).dim == plane_count(P.m, P.n, r, mu)
