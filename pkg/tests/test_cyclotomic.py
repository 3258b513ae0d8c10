from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dormant.counting.cyclotomic import CyclotomicElement, sine_numerator, zeta_power
from dormant.errors import InputError, InvariantViolation

primes = st.sampled_from([3, 5, 7, 11])


@given(primes)
def test_zeta_has_order_2p(p):
    one = CyclotomicElement.one(p)
    assert zeta_power(p, p) == -one
    assert zeta_power(2 * p, p) == one
    assert zeta_power(1, p) * zeta_power(-1, p) == one


@given(primes, st.integers(min_value=-30, max_value=30))
def test_sine_numerator_symmetries(p, m):
    s = sine_numerator(m, p)
    assert sine_numerator(m + 2 * p, p) == s
    assert sine_numerator(-m, p) == -s
    assert sine_numerator(p - m, p) == s


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_product_of_sines(p):
    product = CyclotomicElement.one(p)
    for j in range(1, p):
        product = product * sine_numerator(j, p)
    assert product.rational_value() == (-1) ** ((p - 1) // 2) * p


def test_square_of_sine_is_rational():
    assert (sine_numerator(1, 3) ** 2).rational_value() == -3


@given(primes, st.integers(min_value=1, max_value=20), st.integers(min_value=1, max_value=4))
def test_inverse_and_negative_powers(p, m, k):
    x = sine_numerator(m, p) + CyclotomicElement.from_rational(p, Fraction(1, 3))
    one = CyclotomicElement.one(p)
    assert x * x.inverse() == one
    assert x ** -k * x ** k == one


def test_rational_value_of_irrational_element():
    with pytest.raises(InvariantViolation):
        zeta_power(1, 5).rational_value()
    assert not zeta_power(1, 5).is_rational
    assert CyclotomicElement.from_rational(5, Fraction(2, 7)).rational_value() == Fraction(2, 7)


def test_validation():
    with pytest.raises(InputError):
        CyclotomicElement.zero(4)
    with pytest.raises(InputError):
        CyclotomicElement(5, (1, 2))
    with pytest.raises(InputError):
        CyclotomicElement.zero(5).inverse()
    with pytest.raises(InputError):
        CyclotomicElement.one(5) + CyclotomicElement.one(7)
