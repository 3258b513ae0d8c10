"""Rigorous enclosures with gmpy2 directed rounding

Lower endpoints are always computed under RoundDown and upper endpoints under
RoundUp, so every Interval contains the real value it stands for.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2

from dormant.errors import InputError, InsufficientPrecision


def _down(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundDown)


def _up(bits: int):
    return gmpy2.context(precision=bits, round=gmpy2.RoundUp)


def _mpq(q: Union[int, Fraction]) -> "gmpy2.mpq":
    q = Fraction(q)
    return gmpy2.mpq(q.numerator, q.denominator)


@dataclass(frozen=True)
class Interval:
    lo: "gmpy2.mpfr"
    hi: "gmpy2.mpfr"
    bits: int

    @classmethod
    def exact(cls, q: Union[int, Fraction], bits: int) -> "Interval":
        with _down(bits):
            lo = gmpy2.mpfr(_mpq(q))
        with _up(bits):
            hi = gmpy2.mpfr(_mpq(q))
        return cls(lo, hi, bits)

    @classmethod
    def pi(cls, bits: int) -> "Interval":
        with _down(bits):
            lo = gmpy2.const_pi()
        with _up(bits):
            hi = gmpy2.const_pi()
        return cls(lo, hi, bits)

    def __add__(self, other: "Interval") -> "Interval":
        with _down(self.bits):
            lo = self.lo + other.lo
        with _up(self.bits):
            hi = self.hi + other.hi
        return Interval(lo, hi, self.bits)

    def __neg__(self) -> "Interval":
        with _down(self.bits):
            lo = -self.hi
        with _up(self.bits):
            hi = -self.lo
        return Interval(lo, hi, self.bits)

    def __mul__(self, other: "Interval") -> "Interval":
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        with _down(self.bits):
            lo = min(a * b for a, b in pairs)
        with _up(self.bits):
            hi = max(a * b for a, b in pairs)
        return Interval(lo, hi, self.bits)

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise InsufficientPrecision(self.bits, self.width)
        with _down(self.bits):
            lo = 1 / self.hi
        with _up(self.bits):
            hi = 1 / self.lo
        return Interval(lo, hi, self.bits)

    def __pow__(self, k: int) -> "Interval":
        if k < 0:
            return (self ** -k).reciprocal()
        result = Interval.exact(1, self.bits)
        for _ in range(k):
            result = result * self
        return result

    @property
    def width(self) -> "gmpy2.mpfr":
        with _up(self.bits):
            return self.hi - self.lo

    def contains(self, q: Union[int, Fraction]) -> bool:
        value = _mpq(q)
        return self.lo <= value <= self.hi


def sin_pi_fraction(m: int, p: int, bits: int) -> Interval:
    """Enclosure of sin(m pi / p) for odd p"""
    if p < 3 or p % 2 == 0:
        raise InputError(f"sin(m pi/p) enclosures need an odd p >= 3, got p={p}")
    m %= 2 * p
    negative = m >= p
    if negative:
        m -= p
    if m == 0:
        return Interval.exact(0, bits)
    # sin is increasing on (0, pi/2) and m lands there after folding
    m = min(m, p - m)
    pi = Interval.pi(bits)
    with _down(bits):
        lo = gmpy2.sin(pi.lo * m / p)
    with _up(bits):
        hi = gmpy2.sin(pi.hi * m / p)
    enclosure = Interval(lo, hi, bits)
    return -enclosure if negative else enclosure
