"""Base-p digit arithmetic, exponent tuples and their equivalence classes

Everything here works with exact Python integers. Residues d in Z/p^N Z are
accepted as arbitrary integers and normalised once, by `lift`.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy

from dormant.errors import GridOverflow, InputError, PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10**7


@dataclass(frozen=True)
class DigitContext:
    """The prime p and the level horizon p^N"""
    p: int
    N: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not sympy.isprime(self.p):
            raise InputError(f"p must be a prime >= 2, got {self.p!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise InputError(f"N must be a positive integer, got {self.N!r}")

    @property
    def modulus(self) -> int:
        """p^N"""
        return self.p ** self.N

    @property
    def level(self) -> int:
        return self.N - 1

    @property
    def pivot(self) -> int:
        """p^(N-1), the divisor defining q_j"""
        return self.p ** (self.N - 1)

    def q(self, j: int) -> int:
        """q_j with j = p^(N-1) * q_j + r_j, 0 <= r_j < p^(N-1)"""
        return j // self.pivot


@dataclass(frozen=True)
class ExponentTuple:
    """An element of Xi_{m,N}^<= (or Xi_{m,N}^< when strict)"""
    entries: Tuple[int, ...]
    ctx: DigitContext
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not _entries_valid(self.entries, self.ctx, self.strict):
            kind = "strictly" if self.strict else "weakly"
            raise InputError(
                f"{list(self.entries)} is not a {kind} increasing tuple in [0, {self.ctx.modulus})"
            )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    @property
    def normalized(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a, self.ctx.modulus) for a in self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True)
class WeightVector:
    """r exponent tuples sharing one DigitContext, i.e. the weights a/p^N"""
    ctx: DigitContext
    tuples: Tuple[ExponentTuple, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(self.tuples))
        for t in self.tuples:
            if t.ctx != self.ctx:
                raise InputError(f"weight tuple {list(t.entries)} uses {t.ctx}, expected {self.ctx}")

    @classmethod
    def of(cls, ctx: DigitContext, rows: Sequence[Sequence[int]], strict: bool = False) -> "WeightVector":
        return cls(ctx, tuple(ExponentTuple(tuple(row), ctx, strict) for row in rows))

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    @property
    def normalized(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(t.normalized for t in self.tuples)

    @property
    def total(self) -> int:
        return sum(t.total for t in self.tuples)


def _entries_valid(entries: Sequence[int], ctx: DigitContext, strict: bool) -> bool:
    if any(not isinstance(a, int) or a < 0 or a >= ctx.modulus for a in entries):
        return False
    for left, right in zip(entries, entries[1:]):
        if left > right or (strict and left == right):
            return False
    return True


def lift(d: int, ctx: DigitContext) -> int:
    """The representative of d mod p^N in [0, p^N)"""
    return d % ctx.modulus


def lift_and_digits(d: int, ctx: DigitContext) -> List[int]:
    """Base-p digits (least significant first) of the lift of d"""
    rest = lift(d, ctx)
    digits = []
    for _ in range(ctx.N):
        rest, digit = divmod(rest, ctx.p)
        digits.append(digit)
    return digits


def negate_digits(d: int, ctx: DigitContext) -> List[int]:
    return lift_and_digits(-d, ctx)


def split_M(a: int, M: int, ctx: DigitContext) -> Tuple[int, int]:
    """(s1, s2) with a = s1 + p^M s2, 0 <= s1 < p^M, 0 <= s2 < p^(N-M)"""
    if not 0 <= a < ctx.modulus:
        raise InputError(f"a must lie in [0, {ctx.modulus}), got {a}")
    if not 0 <= M <= ctx.N:
        raise InputError(f"M must lie in [0, {ctx.N}], got {M}")
    s2, s1 = divmod(a, ctx.p ** M)
    return s1, s2


def split_tuple_monotone(t: ExponentTuple, M: int) -> Tuple[Tuple[int, ...], Tuple[int, ...], bool]:
    pairs = [split_M(a, M, t.ctx) for a in t.entries]
    s1 = tuple(pair[0] for pair in pairs)
    s2 = tuple(pair[1] for pair in pairs)
    monotone = _non_decreasing(s1) and _non_decreasing(s2)
    return s1, s2, monotone


def _non_decreasing(values: Sequence[int]) -> bool:
    return all(left <= right for left, right in zip(values, values[1:]))


def xi_contains(entries: Sequence[int], m: int, ctx: DigitContext, strict: bool) -> bool:
    return len(entries) == m and _entries_valid(tuple(entries), ctx, strict)


def xi_cardinality(m: int, ctx: DigitContext, strict: bool) -> int:
    if strict:
        return comb(ctx.modulus, m)
    return comb(ctx.modulus + m - 1, m)


def enumerate_xi(
    m: int, ctx: DigitContext, strict: bool, cap: Optional[int] = None
) -> Iterator[ExponentTuple]:
    """Lexicographic enumeration of Xi_{m,N}^< or Xi_{m,N}^<=

    Without an explicit cap the DORMANT_ENUM_CAP override applies.
    """
    if m < 0:
        raise InputError(f"m must be non-negative, got {m}")
    if cap is None:
        from dormant.config import default_enum_cap

        cap = default_enum_cap()
    size = xi_cardinality(m, ctx, strict)
    if size > cap:
        raise GridOverflow(f"refusing to enumerate Xi_{{{m},{ctx.N}}} for p={ctx.p}", size, cap)
    logger.debug("enumerating %d tuples of length %d at p=%d N=%d", size, m, ctx.p, ctx.N)
    pick = itertools.combinations if strict else itertools.combinations_with_replacement
    for entries in pick(range(ctx.modulus), m):
        yield ExponentTuple(entries, ctx, strict)


def _shifted(t: ExponentTuple, c: int) -> Tuple[int, ...]:
    return tuple(sorted((a + c) % t.ctx.modulus for a in t.entries))


def rho_orbit(t: ExponentTuple) -> List[ExponentTuple]:
    if not t.strict:
        raise InputError("rho is defined on strict tuples only")
    orbit = {_shifted(t, c) for c in range(t.ctx.modulus)}
    return [ExponentTuple(entries, t.ctx, True) for entries in sorted(orbit)]


def rho_canonical(t: ExponentTuple) -> ExponentTuple:
    """Lexicographically least member of the shift class of t.

    The choice of representative is a convention; only equality of canonical
    forms carries meaning.
    """
    if not t.strict:
        raise InputError("rho is defined on strict tuples only")
    best = min(_shifted(t, c) for c in range(t.ctx.modulus))
    return ExponentTuple(best, t.ctx, True)


def rho_equivalent(s: ExponentTuple, t: ExponentTuple) -> bool:
    return s.ctx == t.ctx and len(s) == len(t) and rho_canonical(s) == rho_canonical(t)


def rho_lift(t: ExponentTuple, target_sum: int) -> ExponentTuple:
    """The member of the class of t whose entries sum to target_sum mod p^N"""
    if not t.strict:
        raise InputError("rho is defined on strict tuples only")
    n, ctx = len(t), t.ctx
    if n == 0:
        raise PreconditionError("rho_lift needs a non-empty tuple")
    if n >= ctx.p:
        raise PreconditionError(f"rho_lift needs n < p, got n={n}, p={ctx.p}")
    # each shift by c moves the sum by n*c and n is a unit mod p^N
    c = ((target_sum - t.total) * pow(n, -1, ctx.modulus)) % ctx.modulus
    return ExponentTuple(_shifted(t, c), ctx, True)


def tau(b: int, p: int) -> int:
    if p % 2 == 0:
        raise InputError(f"tau needs an odd prime, got p={p}")
    if not 0 <= b <= p - 1:
        raise InputError(f"tau needs 0 <= b <= p-1, got b={b}")
    if b % 2:
        return (b - 1) // 2
    return (p - 1 - b) // 2
