"""Bihomogeneous polynomials in (s0, s1; t0, t1), forms in x0..x3, and parsing.

A monomial of bidegree (a, b) is keyed by ``(i, j)`` meaning
``s0^(a-i) s1^i t0^(b-j) t1^j``; forms in x are keyed by exponent 4-tuples.
Both store only nonzero coefficients.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

from .fields import QQ, Field

S_VARS = ("s0", "s1", "t0", "t1")
X_VARS = ("x0", "x1", "x2", "x3")

#: order of the products f_i f_j (i <= j) used for quadric coordinates
QUADRIC_PAIRS = tuple(combinations_with_replacement(range(4), 2))
#: order of the pairs (i < j) used for second Koszul cycles
KOSZUL_PAIRS = tuple((i, j) for i in range(4) for j in range(i + 1, 4))


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message if position is None else f"{message} at position {position}")


class BidegreeError(ValueError):
    pass


def monomial_basis(mu: int, nu: int) -> list[tuple[int, int]]:
    """Canonical (lex) basis of R_(mu,nu); this fixes every row order downstream."""
    if mu < 0 or nu < 0:
        return []
    return [(i, j) for i in range(mu + 1) for j in range(nu + 1)]


def bidim(mu: int, nu: int) -> int:
    return (mu + 1) * (nu + 1) if mu >= 0 and nu >= 0 else 0


def monomial_index(i: int, j: int, nu: int) -> int:
    return i * (nu + 1) + j


def xmonomials(d: int) -> list[tuple[int, int, int, int]]:
    """Degree-d monomials in x0..x3, in descending lex order (x0^d first)."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            for c in range(d - a - b, -1, -1):
                out.append((a, b, c, d - a - b - c))
    return out


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[a-z]\d)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_terms(text: str, variables: tuple[str, ...]) -> list[tuple[Fraction, tuple[int, ...], str]]:
    """Parse ``text`` into ``(coefficient, exponents, source)`` triples.

    Grammar: ``poly := [sign] term (('+'|'-') term)*``,
    ``term := [coef ['*']] factor ('*' factor)*`` with ``coef := int | int/int``
    and ``factor := var ['^' int]``. A bare coefficient is accepted as a
    constant term.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    index = {v: k for k, v in enumerate(variables)}
    terms = []
    k = 0

    def peek(kind=None, value=None):
        if k >= len(tokens):
            return None
        t = tokens[k]
        if kind and t[0] != kind:
            return None
        if value and t[1] != value:
            return None
        return t

    def expect_int():
        nonlocal k
        t = peek("num")
        if t is None:
            where = tokens[k][2] if k < len(tokens) else len(text)
            raise ParseError("expected an integer", where)
        k += 1
        return int(t[1])

    sign = 1
    if peek("op", "-") or peek("op", "+"):
        sign = -1 if tokens[k][1] == "-" else 1
        k += 1
    while True:
        start = tokens[k][2] if k < len(tokens) else len(text)
        coef = Fraction(1)
        exps = [0] * len(variables)
        seen_factor = False
        if peek("num"):
            coef = Fraction(expect_int())
            if peek("op", "/"):
                k += 1
                den = expect_int()
                if den == 0:
                    raise ParseError("zero denominator", tokens[k - 1][2])
                coef /= den
            if peek("op", "*"):
                k += 1
                if not peek("var"):
                    where = tokens[k][2] if k < len(tokens) else len(text)
                    raise ParseError("expected a variable", where)
        while peek("var"):
            t = tokens[k]
            if t[1] not in index:
                raise ParseError(f"unknown variable {t[1]!r}", t[2])
            k += 1
            e = 1
            if peek("op", "^"):
                k += 1
                e = expect_int()
            exps[index[t[1]]] += e
            seen_factor = True
            if peek("op", "*"):
                k += 1
                if not peek("var"):
                    where = tokens[k][2] if k < len(tokens) else len(text)
                    raise ParseError("expected a variable", where)
        if not seen_factor and coef == 1 and not (start < len(text) and text[start].isdigit()):
            raise ParseError("expected a term", start)
        end = tokens[k][2] if k < len(tokens) else len(text)
        terms.append((sign * coef, tuple(exps), text[start:end].strip()))
        if k == len(tokens):
            break
        t = tokens[k]
        if t[0] == "op" and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            k += 1
            if k == len(tokens):
                raise ParseError("dangling operator", t[2])
        else:
            raise ParseError(f"unexpected {t[1]!r}", t[2])
    return terms


def _format_coef(c, first: bool) -> tuple[str, str]:
    """Return (sign, magnitude) for a signed rational coefficient."""
    c = Fraction(c)
    sign = "-" if c < 0 else ("" if first else "+")
    return sign, str(abs(c))


def _render(items, names) -> str:
    """``items``: iterable of (signed coefficient, exponent tuple)."""
    parts = []
    for coef, exps in items:
        sign, mag = _format_coef(coef, not parts)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = mag
        elif mag == "1":
            body = "*".join(factors)
        else:
            body = mag + "*" + "*".join(factors)
        if parts:
            parts.append(f" {sign} {body}")
        else:
            parts.append(f"{sign}{body}")
    return "".join(parts) if parts else "0"


# -- bihomogeneous polynomials ----------------------------------------------

@dataclass(frozen=True, eq=False)
class BiHomPoly:
    sdeg: int
    tdeg: int
    coeffs: dict = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coeffs.items():
            if not (0 <= i <= self.sdeg and 0 <= j <= self.tdeg):
                raise BidegreeError(f"monomial {(i, j)} outside bidegree {(self.sdeg, self.tdeg)}")
            c = self.field(c)
            if c != 0:
                clean[(i, j)] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.sdeg, self.tdeg

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "BiHomPoly"):
        self.field.check(other.field)

    def __add__(self, other: "BiHomPoly") -> "BiHomPoly":
        self._check(other)
        if self.bidegree != other.bidegree:
            raise BidegreeError("adding polynomials of different bidegrees")
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = F.add(out[k], c) if k in out else c
        return BiHomPoly(self.sdeg, self.tdeg, out, F)

    def __neg__(self) -> "BiHomPoly":
        F = self.field
        return BiHomPoly(self.sdeg, self.tdeg, {k: F.neg(c) for k, c in self.coeffs.items()}, F)

    def __sub__(self, other: "BiHomPoly") -> "BiHomPoly":
        return self + (-other)

    def scale(self, c) -> "BiHomPoly":
        F = self.field
        c = F(c)
        return BiHomPoly(self.sdeg, self.tdeg, {k: F.mul(v, c) for k, v in self.coeffs.items()}, F)

    def __mul__(self, other):
        if not isinstance(other, BiHomPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                key = (i + k, j + l)
                v = F.mul(a, b)
                out[key] = F.add(out[key], v) if key in out else v
        return BiHomPoly(self.sdeg + other.sdeg, self.tdeg + other.tdeg, out, F)

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, BiHomPoly) and self.field == other.field
                and self.bidegree == other.bidegree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.bidegree, frozenset(self.coeffs.items())))

    def eval(self, s, t):
        """Exact value at s = (s0, s1), t = (t0, t1)."""
        F = self.field
        s0, s1 = (F(v) for v in s)
        t0, t1 = (F(v) for v in t)
        total = F.zero
        for (i, j), c in self.coeffs.items():
            term = F.mul(c, F.mul(F.mul(_pow(F, s0, self.sdeg - i), _pow(F, s1, i)),
                                  F.mul(_pow(F, t0, self.tdeg - j), _pow(F, t1, j))))
            total = F.add(total, term)
        return total

    def coefficient_vector(self) -> list:
        """Coefficients in canonical monomial order."""
        F = self.field
        return [self.coeffs.get(k, F.zero) for k in monomial_basis(self.sdeg, self.tdeg)]

    @classmethod
    def from_vector(cls, vec, sdeg: int, tdeg: int, field: Field = QQ) -> "BiHomPoly":
        return cls(sdeg, tdeg, dict(zip(monomial_basis(sdeg, tdeg), vec)), field)

    def transpose(self) -> "BiHomPoly":
        """Swap the roles of s and t."""
        return BiHomPoly(self.tdeg, self.sdeg, {(j, i): c for (i, j), c in self.coeffs.items()},
                         self.field)

    def over(self, field: Field) -> "BiHomPoly":
        return BiHomPoly(self.sdeg, self.tdeg,
                         {k: field(self.field.signed(c)) for k, c in self.coeffs.items()}, field)

    def __str__(self) -> str:
        F = self.field
        items = []
        for (i, j) in sorted(self.coeffs):
            items.append((F.signed(self.coeffs[(i, j)]),
                          (self.sdeg - i, i, self.tdeg - j, j)))
        return _render(items, S_VARS)

    def __repr__(self) -> str:
        return f"BiHomPoly({self.sdeg}, {self.tdeg}, {str(self)!r})"


def _pow(F: Field, a, e: int):
    r = F.one
    for _ in range(e):
        r = F.mul(r, a)
    return r


def parse_bipoly(text: str, m: int, n: int, field: Field = QQ) -> BiHomPoly:
    """Parse a polynomial in s0, s1, t0, t1 and check it has bidegree (m, n)."""
    coeffs: dict = {}
    for coef, (a, b, c, d), src in parse_terms(text, S_VARS):
        if coef == 0:
            continue
        if a + b != m or c + d != n:
            raise BidegreeError(f"term {src!r} has bidegree {(a + b, c + d)}, expected {(m, n)}")
        key = (b, d)
        v = field(coef)
        coeffs[key] = field.add(coeffs[key], v) if key in coeffs else v
    return BiHomPoly(m, n, coeffs, field)


def bipoly_mul(a: BiHomPoly, b: BiHomPoly) -> BiHomPoly:
    return a * b


def bipoly_eval(p: BiHomPoly, s, t):
    return p.eval(s, t)


# -- forms in x -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class XForm:
    xdeg: int
    coeffs: dict = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            if len(e) != 4 or sum(e) != self.xdeg:
                raise BidegreeError(f"exponent {e} is not of degree {self.xdeg}")
            c = self.field(c)
            if c != 0:
                clean[tuple(e)] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def variable(cls, k: int, field: Field = QQ) -> "XForm":
        e = [0, 0, 0, 0]
        e[k] = 1
        return cls(1, {tuple(e): field.one}, field)

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "XForm":
        return cls(0, {(0, 0, 0, 0): c}, field)

    @classmethod
    def zero(cls, xdeg: int, field: Field = QQ) -> "XForm":
        return cls(xdeg, {}, field)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "XForm") -> "XForm":
        self.field.check(other.field)
        if self.is_zero() and self.xdeg != other.xdeg:
            return other
        if other.is_zero() and self.xdeg != other.xdeg:
            return self
        if self.xdeg != other.xdeg:
            raise BidegreeError("adding forms of different degrees")
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = F.add(out[k], c) if k in out else c
        return XForm(self.xdeg, out, F)

    def __neg__(self) -> "XForm":
        F = self.field
        return XForm(self.xdeg, {k: F.neg(c) for k, c in self.coeffs.items()}, F)

    def __sub__(self, other: "XForm") -> "XForm":
        return self + (-other)

    def scale(self, c) -> "XForm":
        F = self.field
        c = F(c)
        return XForm(self.xdeg, {k: F.mul(v, c) for k, v in self.coeffs.items()}, F)

    def __mul__(self, other):
        if not isinstance(other, XForm):
            return self.scale(other)
        self.field.check(other.field)
        F = self.field
        out: dict = {}
        for e, a in self.coeffs.items():
            for f, b in other.coeffs.items():
                key = (e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3])
                v = F.mul(a, b)
                out[key] = F.add(out[key], v) if key in out else v
        return XForm(self.xdeg + other.xdeg, out, F)

    __rmul__ = scale

    def __pow__(self, k: int) -> "XForm":
        result = XForm.constant(self.field.one, self.field)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, XForm) and self.field == other.field
                and self.xdeg == other.xdeg and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.xdeg, frozenset(self.coeffs.items())))

    def eval(self, pt):
        F = self.field
        pt = [F(v) for v in pt]
        total = F.zero
        for e, c in self.coeffs.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term = F.mul(term, _pow(F, v, k))
            total = F.add(total, term)
        return total

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending lex order of exponents."""
        return sorted(self.coeffs.items(), reverse=True)

    def leading(self):
        return self.terms()[0] if self.coeffs else None

    def normalized(self) -> "XForm":
        """Scale so the lexicographically first coefficient is 1."""
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.leading()[1]))

    def divide_exact(self, other: "XForm") -> "XForm":
        """Exact quotient; raises ``ArithmeticError`` when ``other`` does not divide."""
        self.field.check(other.field)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        F = self.field
        qdeg = self.xdeg - other.xdeg
        if self.is_zero():
            return XForm.zero(max(qdeg, 0), F)
        if qdeg < 0:
            raise ArithmeticError("inexact division: divisor has larger degree")
        lead_e, lead_c = other.leading()
        inv_lead = F.inv(lead_c)
        rem = dict(self.coeffs)
        quot: dict = {}
        dterms = list(other.coeffs.items())
        while rem:
            e = max(rem)
            q = tuple(a - b for a, b in zip(e, lead_e))
            if min(q) < 0:
                raise ArithmeticError("inexact division")
            c = F.mul(rem[e], inv_lead)
            quot[q] = c
            for f, d in dterms:
                key = (q[0] + f[0], q[1] + f[1], q[2] + f[2], q[3] + f[3])
                v = F.sub(rem.get(key, F.zero), F.mul(c, d))
                if v == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = v
        return XForm(qdeg, quot, F)

    def over(self, field: Field) -> "XForm":
        return XForm(self.xdeg, {k: field(self.field.signed(c)) for k, c in self.coeffs.items()},
                     field)

    def __str__(self) -> str:
        F = self.field
        return _render([(F.signed(c), e) for e, c in self.terms()], X_VARS)

    def __repr__(self) -> str:
        return f"XForm({self.xdeg}, {str(self)!r})"


def parse_xform(text: str, d: int | None = None, field: Field = QQ) -> XForm:
    """Parse a homogeneous form in x0..x3; ``d`` pins the degree when given."""
    coeffs: dict = {}
    deg = d
    for coef, exps, src in parse_terms(text, X_VARS):
        v = field(coef)
        if v == 0:
            continue
        if deg is None:
            deg = sum(exps)
        if sum(exps) != deg:
            raise BidegreeError(f"term {src!r} has degree {sum(exps)}, expected {deg}")
        coeffs[exps] = field.add(coeffs[exps], v) if exps in coeffs else v
    return XForm(deg or 0, coeffs, field)


def xform_eval(g: XForm, pt):
    return g.eval(pt)


# -- moving forms and surface parameterizations -----------------------------

@dataclass(frozen=True)
class MovingForm:
    """Sum over the basis monomials b_k of R_(mu,nu) of b_k * entries[k]."""
    mu: int
    nu: int
    xdeg: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != bidim(self.mu, self.nu):
            raise ValueError("entry count does not match (mu+1)(nu+1)")
        if any(e.xdeg != self.xdeg and not e.is_zero() for e in self.entries):
            raise BidegreeError("entries must be forms of degree xdeg")

    def substitute(self, f) -> BiHomPoly:
        """Replace x_i by f_i; zero exactly when the form follows the parameterization."""
        F = f[0].field
        m, n = f[0].bidegree
        d = self.xdeg
        powers = {}
        total = BiHomPoly(self.mu + d * m, self.nu + d * n, {}, F)
        for (i, j), entry in zip(monomial_basis(self.mu, self.nu), self.entries):
            if entry.is_zero():
                continue
            mono = BiHomPoly(self.mu, self.nu, {(i, j): F.one}, F)
            for e, c in entry.coeffs.items():
                if e not in powers:
                    prod = BiHomPoly(0, 0, {(0, 0): F.one}, F)
                    for k, ek in enumerate(e):
                        for _ in range(ek):
                            prod = prod * f[k]
                    powers[e] = prod
                total = total + (mono * powers[e]).scale(c)
        return total


@dataclass(frozen=True)
class SurfaceParam:
    """A map P1 x P1 -> P3 given by four polynomials of bidegree (m, n)."""
    m: int
    n: int
    f: tuple
    field: Field = QQ

    def __post_init__(self):
        from .exactla import ExactMatrix, rank

        object.__setattr__(self, "f", tuple(self.f))
        if self.m < 1 or self.n < 1:
            raise ValueError("bidegree must be at least (1, 1)")
        if len(self.f) != 4:
            raise ValueError("a surface parameterization needs exactly four polynomials")
        for p in self.f:
            self.field.check(p.field)
            if p.bidegree != (self.m, self.n):
                raise BidegreeError(f"polynomial of bidegree {p.bidegree}, expected {(self.m, self.n)}")
        coeffs = ExactMatrix.from_rows([p.coefficient_vector() for p in self.f], self.field)
        if rank(coeffs) < 4:
            raise ValueError("the four polynomials are linearly dependent")

    @classmethod
    def from_strings(cls, m: int, n: int, polys, field: Field = QQ) -> "SurfaceParam":
        return cls(m, n, tuple(parse_bipoly(t, m, n, field) for t in polys), field)

    @classmethod
    def from_json(cls, data, field: Field = QQ) -> "SurfaceParam":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        return cls.from_strings(int(data["m"]), int(data["n"]), data["f"], field)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "f": [str(p) for p in self.f]}

    def over(self, field: Field) -> "SurfaceParam":
        return SurfaceParam(self.m, self.n, tuple(p.over(field) for p in self.f), field)

    def eval(self, s, t) -> list:
        return [p.eval(s, t) for p in self.f]


def transpose_params(P: SurfaceParam) -> SurfaceParam:
    """Exchange the two P1 factors: s <-> t and m <-> n."""
    return SurfaceParam(P.n, P.m, tuple(p.transpose() for p in P.f), P.field)


def load_fixture(name: str, field: Field = QQ) -> SurfaceParam:
    """Bundled inputs: ``segre``, ``ex51``, ``ex52``, ``ex53``."""
    path = Path(__file__).parent / "data" / f"{name}.json"
    return SurfaceParam.from_json(path, field)
