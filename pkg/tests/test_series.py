from math import comb

import pytest
from hypothesis import given, strategies as st

from dormant.charp.digits import DigitContext, negate_digits
from dormant.disc.algebra import OperatorAlgebraElement
from dormant.disc.series import (
    TruncatedSeries,
    apply_operator,
    generalized_binomial_mod_p,
    lucas_binomial,
    monodromy,
    nabla_action_scalar,
    represent,
    solution_exponents,
)
from dormant.errors import InputError

contexts = st.builds(DigitContext, st.sampled_from([2, 3, 5, 7]), st.integers(min_value=1, max_value=3))


def test_generalized_binomial_examples():
    assert generalized_binomial_mod_p(7, 2, 5) == 1
    assert generalized_binomial_mod_p(-4, 1, 3) == 2
    assert generalized_binomial_mod_p(-4, 3, 3) == 1
    with pytest.raises(InputError):
        generalized_binomial_mod_p(3, -1, 3)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(min_value=0, max_value=200), st.integers(min_value=0, max_value=60))
def test_lucas_agrees_with_integer_binomial(p, n, j):
    assert lucas_binomial(n, j, p) == comb(n, j) % p


@given(st.sampled_from([2, 3, 5]), st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=12))
def test_negative_upper_index(p, m, j):
    exact = (-1) ** j * comb(m + j - 1, j)
    assert generalized_binomial_mod_p(-m, j, p) == exact % p


@given(st.sampled_from([2, 3, 5]), st.integers(min_value=1, max_value=3), st.data())
def test_prime_power_kills_low_binomials(p, N, data):
    j = data.draw(st.integers(min_value=1, max_value=p ** N - 1))
    assert lucas_binomial(p ** N, j, p) == 0


def test_nabla_action_scalar_examples():
    ctx = DigitContext(5, 1)
    assert nabla_action_scalar(0, 1, 0, ctx) == 0
    assert nabla_action_scalar(0, 1, 1, ctx) == 1
    assert nabla_action_scalar(4, 3, 0, DigitContext(3, 2)) == 1


def test_apply_operator():
    ctx = DigitContext(5, 1)
    s = TruncatedSeries(5, (1, 2, 3, 4))
    assert apply_operator(0, 0, s, ctx) == s
    t = TruncatedSeries.monomial(5, 1, 4)
    assert apply_operator(0, 1, t, ctx) == t


def test_represent_matches_sum_of_operators():
    ctx = DigitContext(3, 1)
    s = TruncatedSeries(3, (1,) * 6)
    x = OperatorAlgebraElement(ctx, {1: 1, 2: 2})
    expected = apply_operator(1, 1, s, ctx) + TruncatedSeries(3, tuple(2 * c for c in apply_operator(1, 2, s, ctx).coeffs))
    assert represent(x, 1, s) == expected


def test_monodromy_examples():
    assert monodromy(0, DigitContext(5, 3)) == [0, 0, 0]
    assert monodromy(4, DigitContext(3, 2)) == [2, 1]


@given(contexts, st.integers(min_value=-500, max_value=500))
def test_monodromy_is_negated_digits(ctx, d):
    assert monodromy(d, ctx) == negate_digits(d, ctx)


def test_solution_exponents_examples():
    ctx = DigitContext(5, 1)
    assert solution_exponents(0, ctx.modulus + 1, ctx) == {0, 5}
    assert solution_exponents(1, 4, DigitContext(2, 1)) == {1, 3}
    with pytest.raises(InputError):
        solution_exponents(0, -1, ctx)


@given(st.builds(DigitContext, st.sampled_from([2, 3, 5]), st.integers(min_value=1, max_value=2)), st.data())
def test_solutions_are_the_residue_class(ctx, data):
    d = data.draw(st.integers(min_value=0, max_value=ctx.modulus - 1))
    M = ctx.modulus + ctx.p
    assert solution_exponents(d, M, ctx) == {n for n in range(M) if n % ctx.modulus == d}


def test_series_shape_checks():
    with pytest.raises(InputError):
        TruncatedSeries.monomial(3, 4, 4)
    with pytest.raises(InputError):
        TruncatedSeries.zero(3, 2) + TruncatedSeries.zero(3, 3)
    with pytest.raises(InputError):
        apply_operator(0, 1, TruncatedSeries.zero(3, 2), DigitContext(5, 1))
