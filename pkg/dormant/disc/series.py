"""Truncated power series over F_p and the model modules O_{d,flat}

The operator of degree j acts on t^n under nabla_d by the scalar
q_j! * binom(n - d~, j); everything here reduces to that formula.
"""

from dataclasses import dataclass
from math import comb, factorial
from typing import List, Set, Tuple

from dormant.charp.digits import DigitContext, lift
from dormant.disc.algebra import OperatorAlgebraElement
from dormant.errors import InputError


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_{n < M} coeffs[n] t^n with coefficients in F_p"""
    p: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def monomial(cls, p: int, n: int, order: int) -> "TruncatedSeries":
        if not 0 <= n < order:
            raise InputError(f"t^{n} does not fit a series truncated at order {order}")
        return cls(p, tuple(1 if k == n else 0 for k in range(order)))

    @classmethod
    def zero(cls, p: int, order: int) -> "TruncatedSeries":
        return cls(p, (0,) * order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.p != self.p or other.order != self.order:
            raise InputError("series must share p and truncation order")
        return TruncatedSeries(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))


def lucas_binomial(n: int, j: int, p: int) -> int:
    """binom(n, j) mod p for n, j >= 0, digit by digit"""
    result = 1
    while n or j:
        n, n_digit = divmod(n, p)
        j, j_digit = divmod(j, p)
        if j_digit > n_digit:
            return 0
        result = result * comb(n_digit, j_digit) % p
    return result


def generalized_binomial_mod_p(n: int, j: int, p: int) -> int:
    """binom(n, j) mod p for any integer n and j >= 0"""
    if j < 0:
        raise InputError(f"lower index must be non-negative, got {j}")
    if n >= 0:
        return lucas_binomial(n, j, p)
    # binom(-m, j) = (-1)^j binom(m + j - 1, j); dividing by j! mod p is not an option
    value = lucas_binomial(-n + j - 1, j, p)
    return (-value if j % 2 else value) % p


def nabla_action_scalar(d: int, j: int, n: int, ctx: DigitContext) -> int:
    if j < 0 or n < 0:
        raise InputError(f"degree and power must be non-negative, got j={j} n={n}")
    q_factorial = factorial(ctx.q(j)) % ctx.p
    if not q_factorial:
        return 0
    return q_factorial * generalized_binomial_mod_p(n - lift(d, ctx), j, ctx.p) % ctx.p


def apply_operator(d: int, j: int, s: TruncatedSeries, ctx: DigitContext) -> TruncatedSeries:
    if s.p != ctx.p:
        raise InputError(f"series over F_{s.p} used with p={ctx.p}")
    return TruncatedSeries(s.p, tuple(nabla_action_scalar(d, j, n, ctx) * c for n, c in enumerate(s.coeffs)))


def represent(x: OperatorAlgebraElement, d: int, s: TruncatedSeries) -> TruncatedSeries:
    """Action of a general algebra element under nabla_d"""
    result = TruncatedSeries.zero(s.p, s.order)
    for j, coeff in x.terms.items():
        image = apply_operator(d, j, s, x.ctx)
        result = result + TruncatedSeries(s.p, tuple(coeff * c for c in image.coeffs))
    return result


def monodromy(d: int, ctx: DigitContext) -> List[int]:
    """(mu<1>, mu<p>, ..., mu<p^(N-1)>) of nabla_d at the marked point"""
    return [nabla_action_scalar(d, ctx.p ** s, 0, ctx) for s in range(ctx.N)]


def _is_horizontal(d: int, n: int, ctx: DigitContext) -> bool:
    return all(nabla_action_scalar(d, j, n, ctx) == 0 for j in range(1, ctx.modulus))


def solution_exponents(d: int, M: int, ctx: DigitContext) -> Set[int]:
    """Powers n < M with t^n killed by every positive-degree operator below p^N"""
    if M < 0:
        raise InputError(f"truncation order must be non-negative, got {M}")
    return {n for n in range(M) if _is_horizontal(d, n, ctx)}
