"""Parabolic degree and slope of weighted flag data"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from dormant.charp.digits import DigitContext, ExponentTuple
from dormant.errors import InputError, InvariantViolation


@dataclass(frozen=True)
class ParabolicPoint:
    """Weights alpha^[j] and kernel ranks l^[j] at one marked point"""
    weights: Tuple[Fraction, ...]
    kernel_ranks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "kernel_ranks", tuple(self.kernel_ranks))
        if len(self.weights) != len(self.kernel_ranks):
            raise InputError(
                f"{len(self.weights)} weights but {len(self.kernel_ranks)} kernel ranks at a marked point"
            )
        if any(not isinstance(l, int) or l < 0 for l in self.kernel_ranks):
            raise InputError(f"kernel ranks must be non-negative integers, got {list(self.kernel_ranks)}")

    @classmethod
    def from_exponents(cls, t: ExponentTuple, kernel_ranks: Sequence[int]) -> "ParabolicPoint":
        return cls(t.normalized, tuple(kernel_ranks))

    @property
    def contribution(self) -> Fraction:
        return sum((w * l for w, l in zip(self.weights, self.kernel_ranks)), Fraction(0))


@dataclass(frozen=True)
class ParabolicShape:
    n: int
    d: int
    points: Tuple[ParabolicPoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"rank must be a positive integer, got {self.n!r}")
        if not isinstance(self.d, int):
            raise InputError(f"degree must be an integer, got {self.d!r}")


def par_degree(s: ParabolicShape) -> Fraction:
    return Fraction(s.d) + sum((pt.contribution for pt in s.points), Fraction(0))


def par_slope(s: ParabolicShape) -> Fraction:
    return par_degree(s) / s.n


def frobenius_degree(s: ParabolicShape, ctx: DigitContext) -> int:
    """Degree of the Frobenius pull-back: p^N times the parabolic degree"""
    value = ctx.modulus * par_degree(s)
    if value.denominator != 1:
        raise InvariantViolation(
            f"p^N * par-deg = {value} is not an integer; weights are not of the form a/{ctx.modulus}"
        )
    return value.numerator


def is_destabilizing(sub: ParabolicShape, whole: ParabolicShape) -> bool:
    """Whether a candidate sub-shape violates stability of the whole"""
    if sub.n >= whole.n:
        raise InputError(f"a proper subbundle of rank {sub.n} cannot sit inside rank {whole.n}")
    return par_slope(sub) >= par_slope(whole)
