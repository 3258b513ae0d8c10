"""The commutative algebra of level-(N-1) logarithmic operators at a marked point

Basis symbols are indexed by their degree j >= 0; coefficients live in F_p.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Mapping

from dormant.charp.digits import DigitContext
from dormant.errors import InputError, InvariantViolation


@dataclass(frozen=True)
class OperatorAlgebraElement:
    """Finite F_p-combination of basis operators, keyed by degree"""
    ctx: DigitContext
    terms: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: Dict[int, int] = {}
        for degree, coeff in dict(self.terms).items():
            if not isinstance(degree, int) or degree < 0:
                raise InputError(f"degrees must be non-negative integers, got {degree!r}")
            residue = coeff % self.ctx.p
            if residue:
                cleaned[degree] = residue
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    def __hash__(self):
        return hash((self.ctx, tuple(self.terms.items())))

    @classmethod
    def basis(cls, j: int, ctx: DigitContext) -> "OperatorAlgebraElement":
        return cls(ctx, {j: 1})

    @classmethod
    def unit(cls, ctx: DigitContext) -> "OperatorAlgebraElement":
        return cls(ctx, {0: 1})

    def _check(self, other: "OperatorAlgebraElement"):
        if not isinstance(other, OperatorAlgebraElement):
            raise InputError(f"cannot combine with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise InputError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "OperatorAlgebraElement") -> "OperatorAlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for degree, coeff in other.terms.items():
            terms[degree] = terms.get(degree, 0) + coeff
        return OperatorAlgebraElement(self.ctx, terms)

    def scale(self, c: int) -> "OperatorAlgebraElement":
        return OperatorAlgebraElement(self.ctx, {j: c * v for j, v in self.terms.items()})

    def __mul__(self, other: "OperatorAlgebraElement") -> "OperatorAlgebraElement":
        return b_mul(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.terms


@lru_cache(maxsize=None)
def _exact_coeff(j1: int, j2: int, j: int, pivot: int) -> Fraction:
    q = lambda k: k // pivot  # noqa: E731
    multinomial = Fraction(factorial(j), factorial(j1 + j2 - j) * factorial(j - j1) * factorial(j - j2))
    return multinomial * Fraction(factorial(q(j1)) * factorial(q(j2)), factorial(q(j)))


def b_coeff(j1: int, j2: int, j: int, ctx: DigitContext) -> int:
    """Structure constant of basis(j1) * basis(j2) on basis(j), reduced mod p.

    The exact value only has to be p-integral: at p = 2, N = 2 the triple
    (3, 3, 6) gives 10/3, which is a perfectly good element of F_2.
    """
    if min(j1, j2) < 0 or not max(j1, j2) <= j <= j1 + j2:
        raise InputError(f"need max(j1, j2) <= j <= j1 + j2, got j1={j1} j2={j2} j={j}")
    exact = _exact_coeff(j1, j2, j, ctx.pivot)
    if exact.denominator % ctx.p == 0:
        raise InvariantViolation(
            f"structure constant ({j1},{j2};{j}) = {exact} is not p-integral at p={ctx.p}, N={ctx.N}"
        )
    return exact.numerator * pow(exact.denominator, -1, ctx.p) % ctx.p


def b_mul(x: OperatorAlgebraElement, y: OperatorAlgebraElement) -> OperatorAlgebraElement:
    x._check(y)
    ctx = x.ctx
    terms: Dict[int, int] = {}
    for j1, c1 in x.terms.items():
        for j2, c2 in y.terms.items():
            for j in range(max(j1, j2), j1 + j2 + 1):
                coeff = b_coeff(j1, j2, j, ctx)
                if coeff:
                    terms[j] = terms.get(j, 0) + c1 * c2 * coeff
    return OperatorAlgebraElement(ctx, terms)
