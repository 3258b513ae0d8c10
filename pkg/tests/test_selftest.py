import random

import pytest

from dormant.errors import InputError
from dormant.selftest import SUITES, SuiteResult, run_selftest


@pytest.mark.parametrize("name", ["monodromy", "solutions", "roundtrip", "transitivity", "frobenius", "counting"])
def test_quick_suites_pass(name):
    result = SUITES[name]("quick", random.Random(f"0:{name}"))
    assert result.passed, result.failures
    assert result.checked > 0


def test_suite_result_keeps_a_few_failures():
    result = SuiteResult("demo")
    for i in range(10):
        result.check(i % 2 == 0, lambda: "odd")
    assert result.checked == 10
    assert not result.passed
    assert result.failures == ["odd"] * 5


def test_unknown_scale():
    with pytest.raises(InputError):
        run_selftest("huge")
