"""Acceptance suites runnable from the command line

Each suite returns a SuiteResult; a suite fails as soon as any check fails,
but keeps collecting up to a handful of failure messages for the report.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import gmpy2

from dormant.charp.digits import DigitContext, ExponentTuple, negate_digits, split_tuple_monotone
from dormant.counting.formula import (
    Rank2CountInput,
    count_rank2,
    count_rank2_tau,
    enumerate_weight_vectors,
    float_oracle,
    pgl_count,
    sign_identity,
)
from dormant.disc.algebra import OperatorAlgebraElement, b_coeff, b_mul
from dormant.disc.descent import (
    LocalFlatDatum,
    LocalParabolicDatum,
    local_descent,
    local_det,
    local_pullback,
    transitivity_check,
)
from dormant.disc.series import TruncatedSeries, apply_operator, monodromy, represent, solution_exponents
from dormant.errors import DormantError, InputError
from dormant.stability.parabolic import ParabolicPoint, ParabolicShape, frobenius_degree
from dormant.stability.polygon import dominates, enumerate_hn_polygons, oper_match, oper_polygon

logger = logging.getLogger(__name__)

SCALES = ("quick", "full")
MAX_REPORTED_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: Callable[[], str]) -> None:
        self.checked += 1
        if not ok and len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(message())


def _levels(scale: str, quick_max_n: int):
    for p in (2, 3, 5, 7):
        for N in (1, 2, 3):
            if scale == "quick" and N > quick_max_n:
                continue
            yield DigitContext(p, N)


def monodromy_law(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("monodromy law")
    for ctx in _levels(scale, 3):
        for d in range(ctx.modulus):
            got, want = monodromy(d, ctx), negate_digits(d, ctx)
            result.check(got == want, lambda: f"p={ctx.p} N={ctx.N} d={d}: {got} != {want}")
    return result


def solution_law(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("solution law")
    for ctx in _levels(scale, 2):
        M = ctx.modulus + ctx.p
        for d in range(ctx.modulus):
            got = solution_exponents(d, M, ctx)
            want = {n for n in range(M) if n % ctx.modulus == d}
            result.check(got == want, lambda: f"p={ctx.p} N={ctx.N} d={d}: {sorted(got)} != {sorted(want)}")
    return result


def algebra_laws(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("operator algebra laws")
    max_n = 2 if scale == "quick" else 3
    contexts = [DigitContext(p, N) for p in (2, 3, 5) for N in range(1, max_n + 1)]
    for ctx in contexts:
        for j1 in range(31):
            for j2 in range(j1, 31):
                for j in range(j2, j1 + j2 + 1):
                    try:
                        b_coeff(j1, j2, j, ctx)
                        failure = ""
                    except DormantError as exc:
                        failure = str(exc)
                    result.check(not failure, lambda: failure)
                x, y = OperatorAlgebraElement.basis(j1, ctx), OperatorAlgebraElement.basis(j2, ctx)
                result.check(b_mul(x, y) == b_mul(y, x), lambda: f"{ctx}: basis {j1}, {j2} do not commute")
        for _ in range(500 if scale == "full" else 100):
            j1, j2, j3 = (rng.randint(0, 20) for _ in range(3))
            x, y, z = (OperatorAlgebraElement.basis(j, ctx) for j in (j1, j2, j3))
            result.check(
                (x * y) * z == x * (y * z), lambda: f"{ctx}: associativity fails on ({j1}, {j2}, {j3})"
            )
        order = ctx.modulus + 10
        ones = TruncatedSeries(ctx.p, (1,) * order)
        for j1 in range(13):
            for j2 in range(13):
                composed = apply_operator(0, j1, apply_operator(0, j2, ones, ctx), ctx)
                x, y = OperatorAlgebraElement.basis(j1, ctx), OperatorAlgebraElement.basis(j2, ctx)
                product = represent(x * y, 0, ones)
                result.check(composed == product, lambda: f"{ctx}: product ({j1}, {j2}) is not composition")
    return result


def _random_parabolic(rng: random.Random) -> LocalParabolicDatum:
    ctx = DigitContext(rng.choice((2, 3, 5, 7)), rng.randint(1, 3))
    m = rng.randint(1, 4)
    weights = sorted(rng.randrange(ctx.modulus) for _ in range(m))
    return LocalParabolicDatum.of(ctx, weights, [rng.randint(1, 3) for _ in range(m)])


def roundtrip(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("Cartier roundtrip")
    for _ in range(1000 if scale == "full" else 200):
        e = _random_parabolic(rng)
        f = local_pullback(e)
        result.check(local_descent(f) == e, lambda: f"descent(pullback(e)) != e for {e}")
        result.check(local_det(f) == local_det(e), lambda: f"determinant twist changed for {e}")
        flat = LocalFlatDatum(e.ctx, tuple((a, l) for a, l in e.steps))
        result.check(local_pullback(local_descent(flat)).flat == flat, lambda: f"pullback(descent(f)) != f for {flat}")
    return result


def transitivity(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("transitivity")
    for _ in range(1000 if scale == "full" else 200):
        e = _random_parabolic(rng)
        for M in range(e.ctx.N + 1):
            if split_tuple_monotone(e.weights, M)[2]:
                result.check(transitivity_check(e, M), lambda: f"two-stage pull-back differs at M={M} for {e}")
    return result


def frobenius_degree_law(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("Frobenius degree law")
    for _ in range(1000 if scale == "full" else 200):
        ctx = DigitContext(rng.choice((2, 3, 5, 7)), rng.randint(1, 3))
        n, d = rng.randint(1, 4), rng.randint(-10, 10)
        points, expected = [], d * ctx.modulus
        for _ in range(rng.randint(0, 3)):
            m = rng.randint(1, n)
            cuts = sorted(rng.sample(range(1, n), m - 1))
            ranks = [b - a for a, b in zip([0] + cuts, cuts + [n])]
            t = ExponentTuple(tuple(sorted(rng.randrange(ctx.modulus) for _ in range(m))), ctx)
            points.append(ParabolicPoint.from_exponents(t, ranks))
            expected += sum(a * l for a, l in zip(t, ranks))
        got = frobenius_degree(ParabolicShape(n, d, tuple(points)), ctx)
        result.check(got == expected, lambda: f"deg(E^F) = {got}, expected {expected}")
    return result


def polygon_law(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("oper polygon dominance")
    max_n = 3 if scale == "quick" else 4
    for (g, r), n, a in itertools.product(((1, 1), (2, 0), (0, 3)), range(1, max_n + 1), range(-3, 4)):
        k = 2 * g - 2 + r
        oper = oper_polygon(n, a, g, r)
        candidates = enumerate_hn_polygons(n, oper.endpoint[1].numerator, k)
        matches = 0
        for P in candidates:
            result.check(dominates(oper, P), lambda: f"oper polygon does not dominate {P.vertices}")
            matched = oper_match(P, n, a, g, r)
            matches += matched
            result.check(matched == (P == oper), lambda: f"oper_match disagrees with equality on {P.vertices}")
        result.check(matches == 1, lambda: f"n={n} a={a} g={g} r={r}: {matches} oper matches")
    return result


def counting_examples(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("counting examples")
    examples = [(Rank2CountInput(5, 2, 0, ()), 80, 5), (Rank2CountInput(7, 2, 1, ((0, 1),)), 224, 14)]
    for inp, count, pgl in examples:
        result.check(count_rank2(inp) == count, lambda: f"count {count_rank2(inp)} != {count} for {inp}")
        result.check(pgl_count(inp) == pgl, lambda: f"pgl count {pgl_count(inp)} != {pgl} for {inp}")
        enclosure = float_oracle(inp, 128)
        result.check(
            enclosure.contains(count) and enclosure.width < gmpy2.mpfr("1e-10"),
            lambda: f"oracle [{enclosure.lo}, {enclosure.hi}] misses {count}",
        )
    for p in (5, 7, 11, 13):
        inp = Rank2CountInput(p, 2, 0, ())
        closed = Fraction(2 * p * (p * p - 1), 3)
        result.check(count_rank2(inp) == closed, lambda: f"p={p}: {count_rank2(inp)} != closed form {closed}")
    return result


def two_form_agreement(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("two-form agreement")
    max_p = 7 if scale == "quick" else 13
    for p in (3, 5, 7, 11, 13):
        if p > max_p:
            continue
        for g, r in itertools.product(range(5), range(4)):
            if 2 * g - 2 + r <= 0:
                continue
            for inp in enumerate_weight_vectors(p, g, r, "valid"):
                result.check(count_rank2(inp) == count_rank2_tau(inp), lambda: f"forms disagree on {inp}")
    for p in (3, 5, 7, 11):
        for b, j in itertools.product(range(1, p), repeat=2):
            result.check(sign_identity(b, j, p), lambda: f"sign identity fails at b={b} j={j} p={p}")
    return result


def integrality_sweep(scale: str, rng: random.Random) -> SuiteResult:
    result = SuiteResult("integrality sweep")
    max_p = 7 if scale == "quick" else 19
    enclosures = {}
    for p in (3, 5, 7, 11, 13, 17, 19):
        if p > max_p:
            continue
        for g, r in itertools.product(range(5), range(4)):
            if 2 * g - 2 + r <= 0:
                continue
            for inp in enumerate_weight_vectors(p, g, r, "valid"):
                count, pgl = count_rank2(inp), pgl_count(inp)
                result.check(
                    count.denominator == 1 and count >= 0 and pgl.denominator == 1 and pgl >= 0,
                    lambda: f"non-integral or negative count {count} (pgl {pgl}) for {inp}",
                )
                result.check(count == 2 ** (2 * inp.g) * pgl, lambda: f"count != 2^2g pgl for {inp}")
                key = (inp.p, inp.g, inp.b_values)
                if key not in enclosures:
                    enclosures[key] = float_oracle(inp, 128)
                enclosure = enclosures[key]
                result.check(enclosure.contains(count), lambda: f"oracle [{enclosure.lo}, {enclosure.hi}] misses {count}")
    return result


SUITES: Dict[str, Callable[[str, random.Random], SuiteResult]] = {
    "monodromy": monodromy_law,
    "solutions": solution_law,
    "algebra": algebra_laws,
    "roundtrip": roundtrip,
    "transitivity": transitivity,
    "frobenius": frobenius_degree_law,
    "polygon": polygon_law,
    "counting": counting_examples,
    "two-form": two_form_agreement,
    "integrality": integrality_sweep,
}


def run_selftest(scale: str = "quick", seed: int = 0) -> List[SuiteResult]:
    if scale not in SCALES:
        raise InputError(f"scale must be one of {SCALES}, got {scale!r}")
    results = []
    for name, suite in SUITES.items():
        logger.info("running suite %s (%s)", name, scale)
        results.append(suite(scale, random.Random(f"{seed}:{name}")))
    return results
