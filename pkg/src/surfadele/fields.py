"""Coefficient fields: prime fields F_p and the rationals.

Both fields share Python's ``+``, ``-`` and ``*`` on their element types
(``int`` and ``fractions.Fraction``); :meth:`Field.norm` brings a raw result
back into canonical form.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction

from .errors import PolynomialParseError

_MAX_MODULUS = 2**31


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


class Field:
    """Abstract coefficient field. Use :func:`prime_field` or :data:`QQ`."""

    tag: str
    characteristic: int

    def norm(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def from_int(self, n: int):
        return self.norm(n)

    def from_ratio(self, num: int, den: int):
        return self.norm(num) if den == 1 else self.norm(num) * self.inv(self.norm(den))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_finite(self) -> bool:
        return self.characteristic > 0

    def render(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if not m:
            raise PolynomialParseError(f"not a field element: {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise PolynomialParseError("zero denominator")
        return self.from_ratio(int(m.group(1)), den)

    def __repr__(self):
        return f"<Field {self.tag}>"


class PrimeField(Field):
    def __init__(self, p: int):
        if not (_is_prime(p) and p < _MAX_MODULUS):
            raise ValueError(f"modulus must be a prime below 2**31, got {p}")
        self.p = p
        self.characteristic = p
        self.tag = f"f{p}"

    def norm(self, x):
        return int(x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(int(x), -1, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __reduce__(self):
        return (prime_field, (self.p,))


class RationalField(Field):
    characteristic = 0
    tag = "q"

    def norm(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __reduce__(self):
        return (_rationals, ())


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


QQ = RationalField()


def _rationals():
    return QQ


def field_from_tag(tag: str) -> Field:
    """Resolve a field tag such as ``"f2"``, ``"f3"`` or ``"q"``."""
    if tag == "q":
        return QQ
    m = re.fullmatch(r"f(\d+)", tag)
    if not m:
        raise ValueError(f"unknown field tag {tag!r}")
    return prime_field(int(m.group(1)))
