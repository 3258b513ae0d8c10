from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dormant.charp.digits import DigitContext, ExponentTuple
from dormant.errors import InputError, InvariantViolation
from dormant.stability.parabolic import (
    ParabolicPoint,
    ParabolicShape,
    frobenius_degree,
    is_destabilizing,
    par_degree,
    par_slope,
)


def _point():
    return ParabolicPoint((Fraction(1, 5), Fraction(3, 5)), (1, 1))


def test_par_degree_examples():
    assert par_degree(ParabolicShape(2, 3)) == 3
    assert par_degree(ParabolicShape(2, 0, (_point(),))) == Fraction(4, 5)
    doubled = ParabolicPoint((Fraction(1, 5), Fraction(3, 5)), (2, 2))
    assert doubled.contribution == 2 * _point().contribution


def test_par_slope():
    assert par_slope(ParabolicShape(2, 3)) == Fraction(3, 2)
    assert par_slope(ParabolicShape(2, 0, (_point(),))) == Fraction(2, 5)


def test_frobenius_degree_examples():
    ctx = DigitContext(5, 1)
    assert frobenius_degree(ParabolicShape(1, 1), ctx) == 5
    assert frobenius_degree(ParabolicShape(2, 0, (_point(),)), ctx) == 4


def test_frobenius_degree_rejects_foreign_weights():
    shape = ParabolicShape(2, 0, (ParabolicPoint((Fraction(1, 3),), (1,)),))
    with pytest.raises(InvariantViolation):
        frobenius_degree(shape, DigitContext(5, 1))


@st.composite
def shapes(draw):
    ctx = DigitContext(draw(st.sampled_from([2, 3, 5, 7])), draw(st.integers(min_value=1, max_value=2)))
    n, d = draw(st.integers(min_value=1, max_value=4)), draw(st.integers(min_value=-10, max_value=10))
    points, divisor = [], 0
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        entries = sorted(draw(st.lists(st.integers(min_value=0, max_value=ctx.modulus - 1), min_size=1, max_size=n)))
        ranks = draw(st.lists(st.integers(min_value=0, max_value=3), min_size=len(entries), max_size=len(entries)))
        points.append(ParabolicPoint.from_exponents(ExponentTuple(tuple(entries), ctx), ranks))
        divisor += sum(a * l for a, l in zip(entries, ranks))
    return ctx, ParabolicShape(n, d, tuple(points)), d * ctx.modulus + divisor


@given(shapes())
def test_frobenius_degree_is_twisted_divisor_degree(case):
    ctx, shape, expected = case
    assert frobenius_degree(shape, ctx) == expected


def test_is_destabilizing():
    whole = ParabolicShape(2, 0, (_point(),))
    assert is_destabilizing(ParabolicShape(1, 1), whole)
    assert not is_destabilizing(ParabolicShape(1, 0), whole)
    with pytest.raises(InputError):
        is_destabilizing(whole, whole)


def test_shape_validation():
    with pytest.raises(InputError):
        ParabolicShape(0, 0)
    with pytest.raises(InputError):
        ParabolicPoint((Fraction(1, 5),), (1, 1))
    with pytest.raises(InputError):
        ParabolicPoint((Fraction(1, 5),), (-1,))
