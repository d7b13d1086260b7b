"""Exact coefficient domains: the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from ..errors import DomainError


class RationalField:
    """The field Q, backed by gmpy2 rationals (always in lowest terms)."""

    name = "Q"
    characteristic = 0
    p = 0

    def __call__(self, value) -> mpq:
        if isinstance(value, str):
            return mpq(value.strip())
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_str(self, a) -> str:
        return str(a)

    def is_one(self, a) -> bool:
        return a == 1

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field Z/pZ with residues stored as ints in [0, p)."""

    name = "Fp"

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or p >= 2**31 or not gmpy2.is_prime(p):
            raise DomainError(f"modulus must be a prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p

    def __call__(self, value) -> int:
        p = self.p
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def is_one(self, a) -> bool:
        return a == 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def make_field(name: str = "Q", prime: int | None = None):
    """Build a coefficient field from its CLI/JSON tag."""
    if name in ("Q", "QQ"):
        return QQ
    if name in ("Fp", "GF"):
        if prime is None:
            raise DomainError("field Fp needs a prime")
        return PrimeField(prime)
    raise DomainError(f"unknown field {name!r}")
