"""Dyadic rationals in [0, 1] and the fixed enumeration of omega by them.

Natural numbers are identified with the dyadic rationals of [0, 1) level by
level: 0 is sent to 0, and the 2**(k-1) indices of level k are sent, left to
right, to the odd multiples of 2**-k::

    0 -> 0, 1 -> 1/2, 2 -> 1/4, 3 -> 3/4, 4 -> 1/8, 5 -> 3/8, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Dyadic", "encode", "decode"]


@dataclass(frozen=True, order=False)
class Dyadic:
    """The value ``numerator / 2**exponent``, kept in lowest terms."""

    numerator: int
    exponent: int

    def __post_init__(self):
        n, k = self.numerator, self.exponent
        if not (isinstance(n, int) and isinstance(k, int)):
            raise TypeError("numerator and exponent must be int")
        if n < 0 or k < 0:
            raise ValueError(f"negative component in {n}/2^{k}")
        if n > (1 << k):
            raise ValueError(f"{n}/2^{k} exceeds 1")
        if k > 0 and n % 2 == 0:
            raise ValueError(f"{n}/2^{k} is not in lowest terms")
        if k == 0 and n not in (0, 1):
            raise ValueError(f"{n}/2^{k} exceeds 1")

    @classmethod
    def of(cls, numerator: int, exponent: int) -> Dyadic:
        """Build from any (not necessarily reduced) numerator over 2**exponent."""
        if numerator == 0:
            return cls(0, 0)
        while exponent > 0 and numerator % 2 == 0:
            numerator //= 2
            exponent -= 1
        return cls(numerator, exponent)

    @classmethod
    def from_fraction(cls, q: Fraction) -> Dyadic:
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def scaled(self, exponent: int) -> int:
        """Numerator over ``2**exponent``; requires ``exponent >= self.exponent``."""
        return self.numerator << (exponent - self.exponent)

    def __lt__(self, other: Dyadic) -> bool:
        k = max(self.exponent, other.exponent)
        return self.scaled(k) < other.scaled(k)

    def __le__(self, other: Dyadic) -> bool:
        return self == other or self < other

    def __str__(self) -> str:
        return f"{self.numerator}/{1 << self.exponent}"


def encode(n: int) -> Dyadic:
    if n < 0:
        raise ValueError(f"encode expects a natural number, got {n}")
    if n == 0:
        return Dyadic(0, 0)
    k = n.bit_length()
    t = n - (1 << (k - 1))
    return Dyadic(2 * t + 1, k)


def decode(d: Dyadic) -> int:
    if d.numerator == 0:
        return 0
    if d.exponent == 0:
        raise ValueError("1 is not the image of any natural number")
    return (1 << (d.exponent - 1)) + (d.numerator - 1) // 2
