import pytest
from hypothesis import given, settings, strategies as st

from dormant.charp.digits import (
    DigitContext,
    ExponentTuple,
    WeightVector,
    enumerate_xi,
    lift_and_digits,
    negate_digits,
    rho_canonical,
    rho_equivalent,
    rho_lift,
    rho_orbit,
    split_M,
    split_tuple_monotone,
    tau,
    xi_cardinality,
    xi_contains,
)
from dormant.errors import GridOverflow, InputError, PreconditionError

contexts = st.builds(DigitContext, st.sampled_from([2, 3, 5, 7]), st.integers(min_value=1, max_value=3))
# levels with p^N <= 27 keep full enumerations of length <= 3 small
small_levels = [
    DigitContext(p, N) for p, N in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]
]


def test_context_rejects_composite_and_level_zero():
    with pytest.raises(InputError):
        DigitContext(4, 1)
    with pytest.raises(InputError):
        DigitContext(5, 0)


def test_lift_and_digits():
    assert lift_and_digits(0, DigitContext(5, 3)) == [0, 0, 0]
    assert lift_and_digits(13, DigitContext(5, 2)) == [3, 2]
    assert lift_and_digits(-4, DigitContext(3, 2)) == [2, 1]


def test_negate_digits():
    assert negate_digits(0, DigitContext(3, 2)) == [0, 0]
    assert negate_digits(4, DigitContext(3, 2)) == [2, 1]
    assert negate_digits(1, DigitContext(5, 1)) == [4]


@given(contexts, st.integers(min_value=-1000, max_value=1000))
def test_digits_reassemble_the_lift(ctx, d):
    digits = lift_and_digits(d, ctx)
    assert all(0 <= digit < ctx.p for digit in digits)
    assert sum(digit * ctx.p ** i for i, digit in enumerate(digits)) == d % ctx.modulus


def test_split_M():
    ctx = DigitContext(5, 2)
    assert split_M(13, 1, ctx) == (3, 2)
    assert split_M(13, 0, ctx) == (0, 13)
    assert split_M(13, 2, ctx) == (13, 0)
    with pytest.raises(InputError):
        split_M(25, 1, ctx)
    with pytest.raises(InputError):
        split_M(3, 3, ctx)


def test_split_tuple_monotone():
    ctx = DigitContext(5, 2)
    assert split_tuple_monotone(ExponentTuple((0, 1, 2), ctx), 1) == ((0, 1, 2), (0, 0, 0), True)
    assert split_tuple_monotone(ExponentTuple((4, 5), ctx), 1) == ((4, 0), (0, 1), False)
    assert split_tuple_monotone(ExponentTuple((0, 0), ctx), 1)[2]


def test_xi_contains():
    ctx = DigitContext(5, 1)
    assert xi_contains((0, 1), 2, ctx, strict=True)
    assert not xi_contains((1, 1), 2, ctx, strict=True)
    assert xi_contains((1, 1), 2, ctx, strict=False)
    assert not xi_contains((0, 5), 2, ctx, strict=False)
    assert not xi_contains((0, 1), 3, ctx, strict=False)


def test_enumerate_xi_small_cases():
    assert [t.entries for t in enumerate_xi(1, DigitContext(2, 1), strict=False)] == [(0,), (1,)]
    strict = [t.entries for t in enumerate_xi(2, DigitContext(3, 1), strict=True)]
    assert strict == [(0, 1), (0, 2), (1, 2)]
    assert len(list(enumerate_xi(2, DigitContext(2, 1), strict=False))) == 3


@settings(deadline=None)
@given(st.sampled_from(small_levels), st.integers(min_value=0, max_value=3), st.booleans())
def test_enumeration_size_matches_cardinality(ctx, m, strict):
    tuples = list(enumerate_xi(m, ctx, strict))
    assert len(tuples) == xi_cardinality(m, ctx, strict)
    assert len(set(tuples)) == len(tuples)


def test_enumerate_xi_respects_cap():
    with pytest.raises(GridOverflow) as info:
        list(enumerate_xi(3, DigitContext(7, 2), strict=False, cap=100))
    assert info.value.estimate == xi_cardinality(3, DigitContext(7, 2), False)
    assert info.value.cap == 100


def test_exponent_tuple_validation():
    ctx = DigitContext(5, 1)
    with pytest.raises(InputError):
        ExponentTuple((2, 1), ctx)
    with pytest.raises(InputError):
        ExponentTuple((1, 1), ctx, strict=True)
    with pytest.raises(InputError):
        WeightVector(ctx, (ExponentTuple((0, 1), DigitContext(5, 2)),))


def test_rho_canonical_examples():
    ctx = DigitContext(5, 1)
    assert rho_canonical(ExponentTuple((0, 1), ctx, True)).entries == (0, 1)
    assert rho_canonical(ExponentTuple((3, 4), ctx, True)).entries == (0, 1)
    assert rho_canonical(ExponentTuple((1, 3), ctx, True)).entries == (0, 2)
    with pytest.raises(InputError):
        rho_canonical(ExponentTuple((1, 3), ctx, False))


def test_rho_orbit_and_equivalence():
    ctx = DigitContext(3, 1)
    orbit = rho_orbit(ExponentTuple((1, 2), ctx, True))
    assert [t.entries for t in orbit] == [(0, 1), (0, 2), (1, 2)]
    assert rho_equivalent(ExponentTuple((0, 2), ctx, True), ExponentTuple((1, 2), ctx, True))


def test_rho_lift_hits_target_sum():
    ctx = DigitContext(5, 1)
    lifted = rho_lift(ExponentTuple((0, 1), ctx, True), 0)
    assert lifted.entries == (2, 3)
    assert rho_equivalent(lifted, ExponentTuple((0, 1), ctx, True))
    with pytest.raises(PreconditionError):
        rho_lift(ExponentTuple((0, 1), DigitContext(2, 1), True), 0)


def test_tau_examples():
    assert tau(1, 5) == 0
    assert tau(2, 5) == 1
    assert tau(0, 7) == 3
    with pytest.raises(InputError):
        tau(1, 2)
    with pytest.raises(InputError):
        tau(5, 5)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.data())
def test_tau_lands_in_half_range(p, data):
    b = data.draw(st.integers(min_value=0, max_value=p - 1))
    assert 0 <= tau(b, p) <= (p - 1) // 2


@pytest.mark.parametrize("ctx", small_levels, ids=str)
def test_rho_canonical_is_constant_on_shift_classes(ctx):
    for n in range(1, 4):
        for t in enumerate_xi(n, ctx, strict=True):
            canonical = rho_canonical(t)
            assert rho_canonical(canonical) == canonical
            for member in rho_orbit(t):
                assert rho_canonical(member) == canonical


@settings(deadline=None, max_examples=50)
@given(st.lists(st.integers(min_value=0, max_value=124), min_size=1, max_size=3, unique=True))
def test_rho_canonical_at_level_125(entries):
    t = ExponentTuple(tuple(sorted(entries)), DigitContext(5, 3), True)
    canonical = rho_canonical(t)
    assert rho_canonical(canonical) == canonical
    assert all(rho_canonical(member) == canonical for member in rho_orbit(t))


def test_rho_lift_of_empty_tuple():
    with pytest.raises(PreconditionError):
        rho_lift(ExponentTuple((), DigitContext(5, 1), True), 0)


def test_enumeration_cap_from_environment(monkeypatch):
    monkeypatch.setenv("DORMANT_ENUM_CAP", "10")
    ctx = DigitContext(5, 1)
    assert len(list(enumerate_xi(1, ctx, strict=True))) == 5
    with pytest.raises(GridOverflow) as info:
        list(enumerate_xi(2, ctx, strict=True))
    assert info.value.cap == 10
