"""Exact rank-2 count of dormant opers on a general pointed curve

    count = 2 p^(g-1) sum_{j=1}^{p-1} prod_i (-1)^((j+1)(b_i+1)) sin(b_i j pi/p)
                                      / sin^K(j pi/p)

with b_i = a_i^[2] - a_i^[1] and K = 2g - 2 + r. Writing 2i sin(m pi/p) as
zeta^m - zeta^-m for zeta = exp(i pi/p), the powers of 2i collect into
(2i)^(2g-2) = (-4)^(g-1), so the whole sum is evaluated in Q(zeta).
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, List, Optional, Tuple

import gmpy2
import sympy

from dormant.charp.digits import tau
from dormant.counting.cyclotomic import CyclotomicElement, sine_numerator
from dormant.counting.interval import Interval, sin_pi_fraction
from dormant.errors import InputError, InsufficientPrecision

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 128
MAX_PRECISION = 1 << 14

WEIGHT_POLICIES = ("all", "valid")


@dataclass(frozen=True)
class Rank2CountInput:
    p: int
    g: int
    r: int
    pairs: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        pairs = tuple(tuple(pair) for pair in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not isinstance(self.p, int) or self.p < 3 or not sympy.isprime(self.p):
            raise InputError(f"p must be an odd prime, got {self.p!r}")
        if self.g < 0 or self.r < 0:
            raise InputError(f"need g, r >= 0, got g={self.g} r={self.r}")
        if self.k <= 0:
            raise InputError(f"2g-2+r must be positive, got g={self.g} r={self.r}")
        if len(pairs) != self.r:
            raise InputError(f"expected {self.r} weight pairs, got {len(pairs)}")
        for pair in pairs:
            if len(pair) != 2 or not 0 <= pair[0] < pair[1] < self.p:
                raise InputError(f"weight pair {pair} must satisfy 0 <= a1 < a2 < {self.p}")

    @property
    def k(self) -> int:
        return 2 * self.g - 2 + self.r

    @property
    def b_values(self) -> Tuple[int, ...]:
        return tuple(sorted(a2 - a1 for a1, a2 in self.pairs))

    @property
    def weight_sum(self) -> int:
        return sum(a1 + a2 for a1, a2 in self.pairs)


@dataclass(frozen=True)
class HypothesisReport:
    parity: bool
    gap: bool
    prime_bound: bool
    degL_even: bool

    @property
    def all_ok(self) -> bool:
        return self.parity and self.gap and self.prime_bound and self.degL_even


def check_hypotheses(inp: Rank2CountInput, degL_even: bool) -> HypothesisReport:
    return HypothesisReport(
        parity=(inp.r + inp.weight_sum) % 2 == 0,
        gap=sum(inp.b_values) < inp.k,
        prime_bound=Fraction(inp.k) <= Fraction(inp.p, 2),
        degL_even=bool(degL_even),
    )


@lru_cache(maxsize=None)
def _cosecant_power(p: int, j: int, k: int) -> CyclotomicElement:
    """(zeta^j - zeta^-j)^-k"""
    return (sine_numerator(j, p) ** k).inverse()


def _sign(b: int, j: int) -> int:
    return -1 if (j + 1) * (b + 1) % 2 else 1


def _prefactor(p: int, g: int) -> Fraction:
    return 2 * Fraction(p) ** (g - 1) * Fraction(-4) ** (g - 1)


def _evaluate(p: int, g: int, k: int, numerators) -> Fraction:
    total = CyclotomicElement.zero(p)
    for j in range(1, p):
        term = _cosecant_power(p, j, k)
        for factor in numerators(j):
            if factor.is_zero:
                term = CyclotomicElement.zero(p)
                break
            term = term * factor
        total = total + term
    return total.rational_value() * _prefactor(p, g)


@lru_cache(maxsize=None)
def _count_by_b(p: int, g: int, b_values: Tuple[int, ...]) -> Fraction:
    k = 2 * g - 2 + len(b_values)
    return _evaluate(
        p, g, k, lambda j: [sine_numerator(b * j, p).scale(_sign(b, j)) for b in b_values]
    )


@lru_cache(maxsize=None)
def _count_by_tau(p: int, g: int, b_values: Tuple[int, ...]) -> Fraction:
    k = 2 * g - 2 + len(b_values)
    return _evaluate(p, g, k, lambda j: [sine_numerator((2 * tau(b, p) + 1) * j, p) for b in b_values])


def count_rank2(inp: Rank2CountInput) -> Fraction:
    return _count_by_b(inp.p, inp.g, inp.b_values)


def count_rank2_tau(inp: Rank2CountInput) -> Fraction:
    return _count_by_tau(inp.p, inp.g, inp.b_values)


def sign_identity(b: int, j: int, p: int) -> bool:
    """sin((2 tau(b) + 1) j pi/p) = (-1)^((j+1)(b+1)) sin(b j pi/p), checked in Q(zeta)"""
    if not 1 <= b <= p - 1 or not 1 <= j <= p - 1:
        raise InputError(f"need 1 <= b, j <= p-1, got b={b} j={j} p={p}")
    lhs = sine_numerator((2 * tau(b, p) + 1) * j, p)
    rhs = sine_numerator(b * j, p).scale(_sign(b, j))
    return lhs == rhs


def pgl_count(inp: Rank2CountInput) -> Fraction:
    return count_rank2(inp) / theta_characteristic_count(2, inp.g)


def theta_characteristic_count(n: int, g: int) -> int:
    """Number of n-torsion line bundles, n^(2g)"""
    if n < 1 or g < 0:
        raise InputError(f"need n >= 1 and g >= 0, got n={n} g={g}")
    return n ** (2 * g)


def float_oracle(inp: Rank2CountInput, precision_bits: int = DEFAULT_PRECISION) -> Interval:
    if precision_bits < 64:
        raise InputError(f"oracle precision must be at least 64 bits, got {precision_bits}")
    p, bits = inp.p, precision_bits
    total = Interval.exact(0, bits)
    for j in range(1, p):
        term = sin_pi_fraction(j, p, bits) ** -inp.k
        for b in inp.b_values:
            factor = sin_pi_fraction(b * j, p, bits)
            term = term * (factor if _sign(b, j) > 0 else -factor)
        total = total + term
    result = total * Interval.exact(2 * Fraction(p) ** (inp.g - 1), bits)
    if result.width > gmpy2.mpq(1, 4):
        raise InsufficientPrecision(bits, result.width)
    return result


def float_oracle_escalating(
    inp: Rank2CountInput, precision_bits: int = DEFAULT_PRECISION, max_bits: int = MAX_PRECISION
) -> Interval:
    bits = precision_bits
    while True:
        try:
            return float_oracle(inp, bits)
        except InsufficientPrecision as exc:
            if bits * 2 > max_bits:
                raise
            logger.debug("oracle too wide at %d bits (width %s); retrying at %d", bits, exc.width, bits * 2)
            bits *= 2


@dataclass(frozen=True)
class CountReport:
    inputs: Rank2CountInput
    hypotheses: HypothesisReport
    count: Fraction
    count_tau: Fraction
    pgl_count: Fraction
    oracle: Optional[Interval]

    @property
    def validated(self) -> bool:
        return self.hypotheses.all_ok

    @property
    def label(self) -> str:
        return "general-curve count" if self.validated else "formula value, unvalidated"

    @property
    def oracle_agrees(self) -> Optional[bool]:
        if self.oracle is None:
            return None
        return self.oracle.contains(self.count)


def count_report(
    inp: Rank2CountInput, degL_even: bool = True, precision: Optional[int] = DEFAULT_PRECISION
) -> CountReport:
    """Everything the count subcommand prints; precision=None skips the oracle"""
    hypotheses = check_hypotheses(inp, degL_even)
    count = count_rank2(inp)
    if not hypotheses.all_ok:
        logger.warning("hypotheses fail for p=%d g=%d pairs=%s: %s", inp.p, inp.g, list(inp.pairs), hypotheses)
    oracle = float_oracle_escalating(inp, precision) if precision is not None else None
    return CountReport(inp, hypotheses, count, count_rank2_tau(inp), pgl_count(inp), oracle)


def candidate_pairs(p: int, g: int, r: int, policy: str = "all", degL_even: bool = True) -> List[Tuple[int, int]]:
    """Weight pairs that can occur in a vector admitted by the policy"""
    if policy not in WEIGHT_POLICIES:
        raise InputError(f"weight policy must be one of {WEIGHT_POLICIES}, got {policy!r}")
    pairs = list(itertools.combinations(range(p), 2))
    if policy == "all":
        return pairs
    k = 2 * g - 2 + r
    if not degL_even or 2 * k > p:
        return []
    # every b is at least 1, so sum(b) < k bounds each single b
    return [(a1, a2) for a1, a2 in pairs if a2 - a1 <= k - r]


def weight_vector_count(p: int, g: int, r: int, policy: str = "all", degL_even: bool = True) -> int:
    """Number of r-multisets of candidate pairs, an upper bound on the vectors enumerated"""
    if r == 0:
        return 1
    return comb(len(candidate_pairs(p, g, r, policy, degL_even)) + r - 1, r)


def enumerate_weight_vectors(
    p: int, g: int, r: int, policy: str = "all", degL_even: bool = True
) -> Iterator[Rank2CountInput]:
    """r-multisets of weight pairs in lexicographic order"""
    pairs = candidate_pairs(p, g, r, policy, degL_even)
    for combo in itertools.combinations_with_replacement(pairs, r):
        inp = Rank2CountInput(p, g, r, combo)
        if policy == "valid" and not check_hypotheses(inp, degL_even).all_ok:
            continue
        yield inp
