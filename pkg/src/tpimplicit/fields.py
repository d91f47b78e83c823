"""Coefficient fields: the rationals and prime fields.

Elements are plain Python values (``Fraction`` for QQ, ``int`` in ``[0, p)``
for GF(p)); the field object carries the arithmetic so that the hot loops of
the linear algebra can work on raw lists.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

#: largest prime below 2**62
DEFAULT_PRIME = 4611686018427387847
#: 2**31 - 1; products of two reduced residues fit in int64
SMALL_PRIME = 2147483647


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases, deterministic below 3.3e24."""
    if n < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for b in bases:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldMismatchError(ValueError):
    """Raised when objects defined over different fields are combined."""


class Field:
    zero: object
    one: object
    characteristic: int = 0

    def __call__(self, x):
        raise NotImplementedError

    def check(self, other: "Field") -> None:
        if other != self:
            raise FieldMismatchError(f"cannot mix {self} and {other}")


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def signed(self, a) -> Fraction:
        return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"not a prime: {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def signed(self, a) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """``rational`` | ``fp`` | ``fp:<prime>`` | ``fp(<prime>)``."""
    t = text.strip().lower()
    if t in ("rational", "qq", "q"):
        return QQ
    if t == "fp":
        return GF(DEFAULT_PRIME)
    for head in ("fp:", "fp(", "gf(", "gf:"):
        if t.startswith(head):
            return GF(int(t[len(head):].rstrip(")")))
    raise ValueError(f"unknown field {text!r}")
