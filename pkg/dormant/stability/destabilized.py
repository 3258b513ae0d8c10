"""Degree bookkeeping for maximally Frobenius-destabilized parabolic bundles

K below always denotes 2g - 2 + r, the degree of the log canonical bundle.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Tuple

from dormant.charp.digits import DigitContext, WeightVector, split_tuple_monotone, xi_contains
from dormant.errors import InputError, InvariantViolation, PreconditionError
from dormant.stability.parabolic import ParabolicShape, frobenius_degree, par_slope
from dormant.stability.polygon import log_canonical_degree

logger = logging.getLogger(__name__)


def destabilizing_degrees(n: int, c: int, g: int, r: int) -> List[int]:
    """Subquotient degrees, from F^{n-1}/F^n downward, each K below the last"""
    k = log_canonical_degree(g, r)
    return [c - i * k for i in range(n)]


def filtration_degrees(n: int, c: int, g: int, r: int) -> List[int]:
    """deg(F^j) for j = 0..n along a destabilizing filtration with deg(F^{n-1}) = c"""
    k = log_canonical_degree(g, r)
    return [(n - j) * c - (n - j) * (n - j - 1) * k // 2 for j in range(n + 1)]


def oper_det_degree(n: int, g: int, r: int, c: int) -> int:
    k = log_canonical_degree(g, r)
    halved = Fraction(n * (n - 1) * k, 2)
    if halved.denominator != 1:
        raise InputError(f"n(n-1)K/2 = {halved} is not an integer")
    return n * c - halved.numerator


def _check_rows(weights: WeightVector, n: int):
    for t in weights:
        if len(t) != n:
            raise PreconditionError(f"weight tuple {list(t.entries)} has length {len(t)}, expected n={n}")


@dataclass(frozen=True)
class DestabilizationConditions:
    splits_monotone: bool
    within_bounds: bool
    spread: int
    half_gap: Fraction


def destabilization_conditions(weights: WeightVector, n: int, g: int) -> DestabilizationConditions:
    """Numeric hypotheses under which a destabilizing filtration is forced.

    The first-digit split of every tuple must be monotone in both parts, and
    the first-digit spread has to stay below nK/2, which itself may not
    exceed p/n.
    """
    ctx = weights.ctx
    _check_rows(weights, n)
    for t in weights:
        if not t.strict:
            raise PreconditionError(f"weight tuple {list(t.entries)} must be strict")
    r = len(weights)
    k = 2 * g - 2 + r
    monotone = all(split_tuple_monotone(t, 1)[2] for t in weights)
    spread = sum(t[-1] % ctx.p - t[0] % ctx.p for t in weights)
    half_gap = Fraction(n * k, 2)
    within = spread < half_gap and half_gap <= Fraction(ctx.p, n)
    return DestabilizationConditions(monotone, within, spread, half_gap)


@dataclass(frozen=True)
class EmptinessReport:
    divisibility_term: int
    divides_main: bool
    weight_sum_bound: bool
    strictness: bool
    n_divides_degE: bool
    n_less_than_p: bool

    @property
    def nonempty_possible(self) -> bool:
        return self.divides_main and self.weight_sum_bound and self.strictness


def emptiness_report(n: int, ctx: DigitContext, g: int, degL: int, weights: WeightVector) -> EmptinessReport:
    if weights.ctx != ctx:
        raise InputError("weights must use the report's DigitContext")
    _check_rows(weights, n)
    r = len(weights)
    k = 2 * g - 2 + r
    term = degL + n * (n - 1) * k // 2 + weights.total
    report = EmptinessReport(
        divisibility_term=term,
        divides_main=term % n == 0,
        weight_sum_bound=all(t.total < ctx.modulus for t in weights),
        strictness=all(xi_contains(t.entries, n, ctx, True) for t in weights),
        n_divides_degE=degL % n == 0,
        n_less_than_p=n < ctx.p,
    )
    logger.debug("emptiness report for n=%d r=%d degL=%d: %s", n, r, degL, report)
    return report


@dataclass(frozen=True)
class SlopeChain:
    c: int
    par_slope_from_degree: Fraction
    par_slope_closed_form: Fraction
    subbundle_bounds: Tuple[Fraction, ...]


def destabilized_slope_chain(shape: ParabolicShape, ctx: DigitContext, g: int, r: int) -> SlopeChain:
    """Top filtration degree c and the parabolic slopes it forces.

    The pull-back of a maximally destabilized bundle carries the oper
    filtration, so its degree fixes c; the slope read off the shape must
    equal (c - (n - 1)K/2) / p^N.
    """
    k = log_canonical_degree(g, r)
    n = shape.n
    degree = frobenius_degree(shape, ctx)
    c = Fraction(degree + n * (n - 1) * k // 2, n)
    if c.denominator != 1:
        raise PreconditionError(
            f"pull-back degree {degree} is not the degree of an oper filtration of rank {n} (c = {c})"
        )
    from_degree = par_slope(shape)
    closed_form = (c - Fraction((n - 1) * k, 2)) / ctx.modulus
    if from_degree != closed_form:
        raise InvariantViolation(f"slope paths disagree: {from_degree} vs {closed_form}")
    bounds = tuple(from_degree + Fraction((m - n) * k, 2 * ctx.modulus) for m in range(1, n))
    return SlopeChain(c.numerator, from_degree, closed_form, bounds)


@dataclass(frozen=True)
class ClosednessWindow:
    j: int
    lower: Fraction
    upper: Fraction
    excludes_multiples_of_p: bool


def _window_sum(weights: WeightVector, n: int, k: int, upper_range, lower_range) -> Fraction:
    total = Fraction(0)
    for j1 in upper_range:
        for j2 in lower_range:
            total += Fraction(n * k, 2) + sum(t[j1 - 1] - t[j2 - 1] for t in weights)
    return total / n


def closedness_window(weights: WeightVector, j: int, g: int) -> ClosednessWindow:
    """Bounds on the degree of the pulled-back solution sheaf inside F^j.

    Weights are taken at level one and deg E is normalised to zero. A window
    with no multiple of p in it means F^j cannot be preserved by the
    connection.
    """
    if not weights.tuples:
        raise InputError("the window needs at least one marked point")
    if weights.ctx.N != 1:
        raise PreconditionError(f"the window is computed on level-one weights, got N={weights.ctx.N}")
    n = len(weights.tuples[0])
    _check_rows(weights, n)
    if not 1 <= j <= n - 1:
        raise InputError(f"j must lie in [1, {n - 1}], got {j}")
    k = 2 * g - 2 + len(weights)
    lower = _window_sum(weights, n, k, range(1, j + 1), range(j + 1, n + 1))
    upper = _window_sum(weights, n, k, range(n - j + 1, n + 1), range(1, n - j + 1))
    p = weights.ctx.p
    first_multiple = ceil(lower / p) * p
    return ClosednessWindow(j, lower, upper, first_multiple > upper)
