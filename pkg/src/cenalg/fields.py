"""Exact scalar arithmetic over GF(p) and the rationals.

Elements are plain Python values: canonical integers in [0, p) for a prime
field, ``fractions.Fraction`` for the rationals (always reduced, positive
denominator, so equal elements have identical representations).  The field
object carries the arithmetic; containers (matrices, polynomials) hold raw
values plus a field handle, which is where cross-field mixing between two
prime fields is detected.  All values are immutable and safe to share
between threads.
"""

import re
from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction, bad element, or mixed-field operands."""


MAX_PRIME = 2**31

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


def _is_prime(p: int) -> bool:
    # trial division; fine for p < 2^31
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The prime field GF(p), elements stored as ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if type(p) is not int or not 2 <= p < MAX_PRIME:
            raise FieldError(f"prime field order must be an int in [2, 2^31), got {p!r}")
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    # -- identity / comparison ------------------------------------------
    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def name(self) -> str:
        return f"Fp{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    # -- element construction -------------------------------------------
    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def element(self, x) -> int:
        """Canonicalize an int (or exact Fraction with unit denominator mod p)."""
        if type(x) is int:
            return x % self.p
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise FieldError(f"cannot coerce {x!r} into {self!r}")

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, fr: Fraction) -> int:
        den = fr.denominator % self.p
        if den == 0:
            raise FieldError(f"denominator of {fr} vanishes in {self!r}")
        return fr.numerator * pow(den, -1, self.p) % self.p

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if type(a) is not int or type(b) is not int:
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        if type(a) is not int or type(b) is not int:
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        if type(a) is not int or type(b) is not int:
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return pow(a, -1, self.p)  # extended Euclid under the hood

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def canon(self, raw: int) -> int:
        """Reduce an unnormalized integer (e.g. a dot product) to canonical form."""
        return raw % self.p

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    # -- text form ---------------------------------------------------------
    def parse(self, token: str) -> int:
        if not _INT_RE.match(token):
            raise FieldError(f"bad {self!r} element {token!r}")
        return int(token) % self.p

    def format(self, a: int) -> str:
        return str(a)

    # -- enumeration / sampling ---------------------------------------------
    def iter_elements(self):
        return iter(range(self.p))

    def random(self, rng, bound: int = 0) -> int:
        return rng.randrange(self.p)


class RationalField:
    """The rationals, elements stored as ``fractions.Fraction``."""

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    @property
    def name(self) -> str:
        return "Q"

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self):
        return None

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def element(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if type(x) is int:
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot coerce {x!r} into {self!r}")

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, fr: Fraction) -> Fraction:
        return fr

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        if not isinstance(a, Fraction) or not isinstance(b, Fraction):
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        if not isinstance(a, Fraction) or not isinstance(b, Fraction):
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        if not isinstance(a, Fraction) or not isinstance(b, Fraction):
            raise FieldError(f"mixed-field operands in {self!r}: {a!r}, {b!r}")
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def canon(self, raw) -> Fraction:
        return raw if isinstance(raw, Fraction) else Fraction(raw)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def parse(self, token: str) -> Fraction:
        if not _RAT_RE.match(token):
            raise FieldError(f"bad rational {token!r} (expected 'a' or 'a/b')")
        if "/" in token:
            num, den = token.split("/")
            if int(den) == 0:
                raise FieldError(f"zero denominator in {token!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(token))

    def format(self, a: Fraction) -> str:
        return str(a)

    def iter_elements(self):
        raise FieldError("the rationals are not enumerable")

    def random(self, rng, bound: int = 3) -> Fraction:
        return Fraction(rng.randint(-bound, bound))


QQ = RationalField()

Field = PrimeField | RationalField


def field_from_name(name: str) -> Field:
    """Resolve 'Q' or 'Fp<prime>' (e.g. Fp2, Fp101) to a field object."""
    if name == "Q":
        return QQ
    if name.startswith("Fp") and name[2:].isdigit():
        return PrimeField(int(name[2:]))
    raise FieldError(f"unknown field name {name!r} (expected 'Q' or 'Fp<prime>')")
