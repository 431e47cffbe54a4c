"""Exact coefficient fields.

Two kinds of fields are supported, both with bit-exact arithmetic:

* ``QQ`` -- the rationals, with elements stored as ``fractions.Fraction``
  (always in lowest terms, positive denominator);
* ``GF(p)`` -- prime fields for a word-sized prime ``p < 2**31``, with
  elements stored as plain ints reduced to ``[0, p)``.

Matrix code is written against the small ops interface below so the same
elimination routines run over either field (and over rational-function
fields, see :mod:`hilbeq.exactalg.polymatrix`).
"""

from __future__ import annotations

from fractions import Fraction

_PRIME_CACHE: dict[int, "PrimeField"] = {}


class RationalField:
    """Field descriptor for the rationals."""

    name = "Q"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str):
        return Fraction(s)

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Field descriptor for F_p, p a prime below 2**31. Elements are ints in [0, p)."""

    char: int

    def __init__(self, p: int):
        if p < 2 or p >= 2**31:
            raise ValueError(f"prime field modulus out of range: {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def __call__(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def from_int(self, k: int) -> int:
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return a * pow(b, self.p - 2, self.p) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero in prime field")
        return pow(a, self.p - 2, self.p)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    @staticmethod
    def to_str(a) -> str:
        return str(a)

    def from_str(self, s: str):
        return self(Fraction(s))

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3,317,044,064,679,887,385,961,981
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


QQ = RationalField()

#: default prime for randomized property tests
TEST_PRIME = 1000003

#: prime above 2**30 used for random specializations of function-field matrices
BIG_PRIME = 2147483647


def GF(p: int) -> PrimeField:
    """Return the (cached) prime-field descriptor for F_p."""
    field = _PRIME_CACHE.get(p)
    if field is None:
        field = _PRIME_CACHE[p] = PrimeField(p)
    return field


def field_from_name(name: str):
    """Inverse of ``field.name``: ``"Q"`` or ``"Fp:<p>"``."""
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field descriptor {name!r}")
