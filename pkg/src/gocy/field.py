"""Coefficient fields: prime fields GF(p) with p > 2, and the rationals."""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p).  Elements are plain ints in [0, p); 2 must be a unit (p > 2)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p <= 2:
            raise ValueError("need p > 2 so that 2 is a unit")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return True

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def normalize(self, c):
        return int(c) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def random(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """The field of rational numbers, backed by fractions.Fraction."""

    __slots__ = ()

    @property
    def is_prime_field(self) -> bool:
        return False

    @property
    def p(self):
        return 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def normalize(self, c):
        return Fraction(c)

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
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return Fraction(a) / b

    def random(self, rng, nonzero=False):
        # small integers keep Groebner coefficient growth in check
        lo = 1 if nonzero else 0
        return Fraction(rng.randrange(lo, 100))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def GF(p: int) -> PrimeField:
    return PrimeField(p)


QQ = RationalField()


def field_name(field) -> str:
    """Canonical display name, e.g. 'GF(32003)' or 'QQ'."""
    return repr(field)


def field_from_name(name: str):
    name = name.strip()
    if name in ("QQ", "Q"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    raise ValueError(f"unknown field {name!r} (expected GF(p) or QQ)")
