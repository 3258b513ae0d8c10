"""Exact arithmetic in Q(zeta) for a primitive 2p-th root of unity zeta

Elements are polynomials in zeta of degree < p - 1 with Fraction
coefficients, reduced modulo Phi_2p(x) = Phi_p(-x). Products and inverses go
through sympy polynomials over QQ.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import sympy

from dormant.errors import InputError, InvariantViolation

_x = sympy.Symbol("x")


@lru_cache(maxsize=None)
def _modulus(p: int) -> sympy.Poly:
    if p < 3 or not sympy.isprime(p):
        raise InputError(f"cyclotomic arithmetic needs an odd prime, got p={p}")
    return sympy.Poly(sympy.cyclotomic_poly(2 * p, _x, polys=True), _x, domain=sympy.QQ)


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class CyclotomicElement:
    p: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        _modulus(self.p)
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.p - 1:
            raise InputError(f"an element of Q(zeta_{2 * self.p}) has {self.p - 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_rational(cls, p: int, value: Union[int, Fraction]) -> "CyclotomicElement":
        return cls(p, (Fraction(value),) + (Fraction(0),) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CyclotomicElement":
        return cls.from_rational(p, 0)

    @classmethod
    def one(cls, p: int) -> "CyclotomicElement":
        return cls.from_rational(p, 1)

    @classmethod
    def _from_poly(cls, p: int, poly: sympy.Poly) -> "CyclotomicElement":
        reduced = poly.rem(_modulus(p))
        low_first = [_to_fraction(c) for c in reversed(reduced.all_coeffs())]
        low_first += [Fraction(0)] * (p - 1 - len(low_first))
        return cls(p, tuple(low_first))

    def _poly(self) -> sympy.Poly:
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _x, domain=sympy.QQ
        )

    def _check(self, other: "CyclotomicElement"):
        if not isinstance(other, CyclotomicElement) or other.p != self.p:
            raise InputError("cannot mix elements of different cyclotomic fields")

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.p, tuple(-a for a in self.coeffs))

    def scale(self, c: Union[int, Fraction]) -> "CyclotomicElement":
        return CyclotomicElement(self.p, tuple(Fraction(c) * a for a in self.coeffs))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement._from_poly(self.p, self._poly() * other._poly())

    def inverse(self) -> "CyclotomicElement":
        if self.is_zero:
            raise InputError("zero has no inverse")
        return CyclotomicElement._from_poly(self.p, self._poly().invert(_modulus(self.p)))

    def __pow__(self, k: int) -> "CyclotomicElement":
        if k < 0:
            return self.inverse() ** -k
        result, base = CyclotomicElement.one(self.p), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InvariantViolation(
                f"expected a rational value in Q(zeta_{2 * self.p}), got coefficients {[str(c) for c in self.coeffs]}"
            )
        return self.coeffs[0]


@lru_cache(maxsize=None)
def _power_table(p: int) -> Tuple[CyclotomicElement, ...]:
    zeta = CyclotomicElement(p, (Fraction(0), Fraction(1)) + (Fraction(0),) * (p - 3))
    table = [CyclotomicElement.one(p)]
    for _ in range(1, 2 * p):
        table.append(table[-1] * zeta)
    return tuple(table)


def zeta_power(e: int, p: int) -> CyclotomicElement:
    """zeta^e for any integer e; zeta^p = -1"""
    return _power_table(p)[e % (2 * p)]


def sine_numerator(m: int, p: int) -> CyclotomicElement:
    """zeta^m - zeta^-m, which is 2i sin(m pi / p)"""
    return zeta_power(m, p) - zeta_power(-m, p)
