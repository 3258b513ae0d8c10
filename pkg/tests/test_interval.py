from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, strategies as st

from dormant.counting.interval import Interval, sin_pi_fraction
from dormant.errors import InputError, InsufficientPrecision


def test_exact_encloses_rational():
    third = Interval.exact(Fraction(1, 3), 64)
    assert third.lo < third.hi
    assert third.contains(Fraction(1, 3))
    assert not third.contains(Fraction(1, 3) + Fraction(1, 10 ** 9))
    assert Interval.exact(5, 64).width == 0


def test_pi():
    pi = Interval.pi(128)
    assert pi.lo > gmpy2.mpq(31415, 10000)
    assert pi.hi < gmpy2.mpq(31416, 10000)
    assert pi.width < gmpy2.mpfr(2) ** -120


def test_arithmetic():
    two = Interval.exact(2, 64)
    assert (two ** -2).contains(Fraction(1, 4))
    assert (two + -two).contains(0)
    assert (two * Interval.exact(Fraction(-3, 2), 64)).contains(-3)


def test_reciprocal_of_interval_straddling_zero():
    with pytest.raises(InsufficientPrecision) as info:
        Interval(gmpy2.mpfr(-1), gmpy2.mpfr(1), 64).reciprocal()
    assert info.value.bits == 64


def test_sine_of_third_of_pi():
    s = sin_pi_fraction(1, 3, 128)
    assert (s * s).contains(Fraction(3, 4))
    assert sin_pi_fraction(2, 3, 128) == s
    assert sin_pi_fraction(4, 3, 128) == -s
    assert sin_pi_fraction(3, 3, 128).contains(0)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(min_value=-50, max_value=50))
def test_sine_enclosures_are_tight(p, m):
    s = sin_pi_fraction(m, p, 128)
    assert s.lo <= s.hi
    assert -1 <= s.lo and s.hi <= 1
    assert s.width < gmpy2.mpfr(2) ** -100
    if m % p:
        assert (s.lo > 0) == (m % (2 * p) < p)


def test_sine_needs_odd_modulus():
    with pytest.raises(InputError):
        sin_pi_fraction(1, 2, 64)


def test_negation_keeps_working_precision():
    s = sin_pi_fraction(12, 11, 128)
    assert s.lo.precision == 128 and s.hi.precision == 128
    assert s.hi < 0
    third = -Interval.exact(Fraction(1, 3), 128)
    assert third.lo.precision == 128
    assert third.contains(Fraction(-1, 3))
    assert third.width < gmpy2.mpfr(2) ** -120
