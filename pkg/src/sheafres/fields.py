"""Exact scalar arithmetic.

Two interchangeable backends: arbitrary-precision rationals (the default)
and the prime field GF(p).  All matrix code is parameterized by a field
object; scalars themselves are plain Python values (``Fraction`` or ``int``),
which keeps the inner loops cheap.  No floating point anywhere.
"""

from fractions import Fraction


class FieldError(ValueError):
    pass


class Rationals:
    """The field of rational numbers, backed by ``fractions.Fraction``."""

    characteristic = 0
    name = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

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

    def parse(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a rational literal: {s!r}") from exc

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Integers mod p for a prime p.  Elements are ints in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"modulus must be prime, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"mod {p}"
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def parse(self, s):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return self.div(int(num) % self.p, int(den) % self.p)
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise FieldError(f"not an integer literal: {s!r}") from exc

    def to_str(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("mod", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p):
    return PrimeField(p)
