"""Implicit equation by sampling and exact interpolation; no syzygies involved.

Over QQ the kernel is found modulo 62-bit primes, rationally reconstructed and
then certified by exact evaluation at every sample: a rank of N-1 modulo a
prime bounds the rational kernel to dimension one, so a certified vector spans
it. Exact rational elimination is the fallback.
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt, lcm

from .algebra import SurfaceParam, XForm, xmonomials
from .exactla import ExactMatrix, nullspace
from .fields import GF, QQ, PrimeField
from .thresholds import base_degree_r

SAMPLE_RANGE = 40
POST_CHECK = 100
RECONSTRUCTION_PRIMES = (4611686018427387847, 4611686018427387817, 4611686018427387787,
                         4611686018427387761, 4611686018427387751, 4611686018427387737)


class SamplingError(RuntimeError):
    pass


class NotASurfaceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ImplicitResult:
    F: XForm
    degF: int
    degphi_lci: int | None
    samples_used: int
    seed: int
    r: int

    def to_json(self) -> str:
        return json.dumps({
            "F": str(self.F), "degF": self.degF, "degphi_lci": self.degphi_lci,
            "degphi_valid_if": "all base points l.c.i.",
            "samples_used": self.samples_used, "seed": self.seed, "r": self.r,
        })


def sample_surface(P: SurfaceParam, count: int, seed: int = 0) -> list[tuple]:
    """Image points of distinct parameters (1 : s1) x (1 : t1) with small integer s1, t1."""
    if count < 1:
        raise ValueError("count must be positive")
    F = P.field
    rng = random.Random(seed)
    seen = set()
    points = []
    failures = 0
    while len(points) < count:
        s1 = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
        t1 = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
        if (s1, t1) in seen and len(seen) < (2 * SAMPLE_RANGE + 1) ** 2:
            failures += 1
        else:
            seen.add((s1, t1))
            pt = tuple(P.eval((1, s1), (1, t1)))
            if all(v == 0 for v in pt):
                failures += 1
            else:
                points.append(pt)
        if failures > 100 * count:
            raise SamplingError("resample budget exhausted")
    return points


def _evaluation_rows(samples, monos, F):
    rows = []
    top = [max(e[k] for e in monos) for k in range(4)]
    for pt in samples:
        powers = []
        for k in range(4):
            seq = [F.one]
            for _ in range(top[k]):
                seq.append(F.mul(seq[-1], pt[k]))
            powers.append(seq)
        rows.append([F.mul(F.mul(powers[0][e[0]], powers[1][e[1]]),
                           F.mul(powers[2][e[2]], powers[3][e[3]])) for e in monos])
    return rows


def _integral_point(pt) -> list[int]:
    den = 1
    for v in pt:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in pt]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def rational_reconstruction(a: int, modulus: int) -> Fraction | None:
    """n/d congruent to a with |n|, d <= sqrt(modulus/2), if it exists."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, a % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def _crt(a: int, m: int, b: int, p: int) -> int:
    return a + m * ((b - a) * pow(m, -1, p) % p)


def _modular_kernel(points, monos, p: int):
    G = GF(p)
    rows = _evaluation_rows([[G(v) for v in pt] for pt in points], monos, G)
    K = nullspace(ExactMatrix.from_rows(rows, G, len(monos)))
    if len(K) != 1:
        return len(K), None
    v = K[0]
    inv = pow(next(x for x in v if x), -1, p)
    return 1, [x * inv % p for x in v]


def _rational_kernel(samples, monos) -> list:
    points = [_integral_point(pt) for pt in samples]
    int_rows = None
    modulus, residues = 1, None
    for p in RECONSTRUCTION_PRIMES:
        dim, vec = _modular_kernel(points, monos, p)
        if dim == 0:
            # full rank modulo p forces full rank over QQ
            return []
        if dim > 1:
            break
        residues = vec if residues is None else [
            _crt(a, modulus, b, p) for a, b in zip(residues, vec)]
        modulus *= p
        candidate = [rational_reconstruction(a, modulus) for a in residues]
        if None in candidate:
            continue
        if int_rows is None:
            int_rows = _evaluation_rows(points, monos, _INTEGERS)
        if all(sum(c * m for c, m in zip(candidate, row) if c) == 0 for row in int_rows):
            # rank N-1 modulo p plus a rational kernel vector: that vector spans the kernel
            return [[QQ(c) for c in candidate]]
    rows = _evaluation_rows(points, monos, QQ)
    return nullspace(ExactMatrix.from_rows(rows, QQ, len(monos)))


class _Integers:
    one = 1

    @staticmethod
    def mul(a, b):
        return a * b


_INTEGERS = _Integers()


def interpolate_implicit(samples, D: int, field=None) -> XForm | None:
    """The unique degree-D form through ``samples``, or ``None``."""
    monos = xmonomials(D)
    if len(samples) < 2 * len(monos):
        raise ValueError(f"need at least {2 * len(monos)} samples for degree {D}")
    F = field or _guess_field(samples)
    if isinstance(F, PrimeField):
        rows = _evaluation_rows(samples, monos, F)
        K = nullspace(ExactMatrix.from_rows(rows, F, len(monos)))
    else:
        K = _rational_kernel(samples, monos)
    if len(K) == 0:
        return None
    if len(K) > 1:
        warnings.warn(f"{len(K)}-dimensional space of degree-{D} forms through the samples")
        return None
    return XForm(D, dict(zip(monos, K[0])), F).normalized()


def _guess_field(samples):
    return QQ if isinstance(samples[0][0], Fraction) else GF()


def implicit_equation(P: SurfaceParam, seed: int = 0) -> ImplicitResult:
    """Lowest-degree form vanishing on the surface, with degree bookkeeping."""
    F = P.field
    r = base_degree_r(P)
    cap = 2 * P.m * P.n
    used = 0
    for D in range(1, cap + 1):
        count = 2 * comb(D + 3, 3)
        samples = sample_surface(P, count, seed * 1000 + D)
        used += count
        G = interpolate_implicit(samples, D, F)
        if G is None:
            continue
        extra = sample_surface(P, POST_CHECK, seed * 1000 + 500 + D)
        used += POST_CHECK
        if any(G.eval(pt) != 0 for pt in extra):
            continue
        rng = random.Random(seed)
        if all(G.eval([rng.randint(-1000, 1000) for _ in range(4)]) == 0 for _ in range(10)):
            continue
        total = 2 * P.m * P.n - r
        degphi = total // D if total % D == 0 else None
        return ImplicitResult(G, D, degphi, used, seed, r)
    raise NotASurfaceError(f"no implicit equation of degree <= {cap}; the image is not a surface")


def proportional(A: XForm, B: XForm):
    """The scalar c with A = c B, or ``None``."""
    A.field.check(B.field)
    F = A.field
    if B.is_zero():
        return F.one if A.is_zero() else None
    if A.xdeg != B.xdeg or set(A.coeffs) != set(B.coeffs):
        return None
    key = next(iter(B.coeffs))
    c = F.div(A.coeffs[key], B.coeffs[key])
    for k, b in B.coeffs.items():
        if A.coeffs[k] != F.mul(c, b):
            return None
    return c


def power_check(A: XForm, F: XForm, k: int) -> bool:
    """True iff A is a nonzero multiple of F^k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    c = proportional(A, F ** k)
    return c is not None and c != 0 and not A.is_zero()
