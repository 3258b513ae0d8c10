"""Local parabolic Frobenius pull-back and Cartier descent on split data

A parabolic bundle on the N-th Frobenius twist of the disc is recorded by its
weights a_1 <= ... <= a_m (in [0, p^N)) and flag type l_1, ..., l_m. Its
pull-back is the p^N-flat bundle sum_j (O(a_j D), nabla_0)^{l_j}, whose
exponent multiset is {a_j with multiplicity l_j}, together with the flag given
by forgetting the last summand step by step. Descent reads the same data back.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

from dormant.charp.digits import DigitContext, ExponentTuple, split_tuple_monotone
from dormant.disc.series import monodromy
from dormant.errors import InputError, PreconditionError

logger = logging.getLogger(__name__)


class FlagStep(NamedTuple):
    exponent: int
    rank: int


@dataclass(frozen=True)
class LocalParabolicDatum:
    """Split parabolic bundle on the Frobenius twist of the formal disc"""
    ctx: DigitContext
    weights: ExponentTuple
    flag_type: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "flag_type", tuple(self.flag_type))
        if self.weights.ctx != self.ctx:
            raise InputError("weights must use the datum's DigitContext")
        if len(self.weights) != len(self.flag_type):
            raise InputError(
                f"{len(self.weights)} weights but {len(self.flag_type)} flag ranks"
            )
        if any(not isinstance(l, int) or l < 1 for l in self.flag_type):
            raise InputError(f"flag ranks must be positive integers, got {list(self.flag_type)}")

    @classmethod
    def of(cls, ctx: DigitContext, weights: Sequence[int], flag_type: Sequence[int]) -> "LocalParabolicDatum":
        return cls(ctx, ExponentTuple(tuple(weights), ctx, False), tuple(flag_type))

    @property
    def rank(self) -> int:
        return sum(self.flag_type)

    @property
    def normalized_weights(self) -> Tuple[Fraction, ...]:
        return self.weights.normalized

    @property
    def steps(self) -> Tuple[FlagStep, ...]:
        return tuple(FlagStep(a, l) for a, l in zip(self.weights, self.flag_type))


@dataclass(frozen=True)
class LocalFlatDatum:
    """Split p^N-flat bundle on the disc: exponents with multiplicities"""
    ctx: DigitContext
    atoms: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        merged = {}
        for atom in self.atoms:
            exponent, multiplicity = atom
            if not isinstance(exponent, int) or not 0 <= exponent < self.ctx.modulus:
                raise InputError(f"exponent {exponent!r} outside [0, {self.ctx.modulus})")
            if not isinstance(multiplicity, int) or multiplicity < 1:
                raise InputError(f"multiplicity of exponent {exponent} must be positive, got {multiplicity!r}")
            merged[exponent] = merged.get(exponent, 0) + multiplicity
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.atoms)

    @property
    def exponent_multiset(self) -> Tuple[int, ...]:
        return tuple(a for a, m in self.atoms for _ in range(m))


@dataclass(frozen=True)
class ParabolicFlatDatum:
    """A split flat datum with its ordered quasi-parabolic flag"""
    flat: LocalFlatDatum
    flag: Tuple[FlagStep, ...]

    def __post_init__(self):
        steps = tuple(FlagStep(int(a), int(l)) for a, l in self.flag)
        object.__setattr__(self, "flag", steps)
        if any(l < 1 for _, l in steps):
            raise InputError("flag steps must have positive rank")
        if any(left.exponent > right.exponent for left, right in zip(steps, steps[1:])):
            raise InputError("flag steps must be ordered by non-decreasing exponent")
        if LocalFlatDatum(self.flat.ctx, steps) != self.flat:
            raise InputError("flag steps do not add up to the flat datum's atoms")

    @property
    def ctx(self) -> DigitContext:
        return self.flat.ctx

    def __iter__(self):
        return iter((self.flat, self.flag))


def local_pullback(e: LocalParabolicDatum) -> ParabolicFlatDatum:
    steps = e.steps
    return ParabolicFlatDatum(LocalFlatDatum(e.ctx, steps), steps)


def local_descent(f: Union[LocalFlatDatum, ParabolicFlatDatum]) -> LocalParabolicDatum:
    if isinstance(f, ParabolicFlatDatum):
        steps = f.flag
    else:
        steps = tuple(FlagStep(a, m) for a, m in f.atoms)
    return LocalParabolicDatum.of(f.ctx, [s.exponent for s in steps], [s.rank for s in steps])


def local_det(x: Union[LocalParabolicDatum, LocalFlatDatum, ParabolicFlatDatum]) -> Tuple[int, int]:
    """(s, s mod p^N) with s = sum_j a_j l_j, the twist of the determinant"""
    if isinstance(x, LocalParabolicDatum):
        pairs: Iterable[Tuple[int, int]] = x.steps
    elif isinstance(x, ParabolicFlatDatum):
        pairs = x.flag
    else:
        pairs = x.atoms
    s = sum(a * l for a, l in pairs)
    return s, s % x.ctx.modulus


def monodromy_operator_on(f: LocalFlatDatum) -> List[Tuple[int, Tuple[int, ...], int]]:
    """Per atom: exponent, monodromy eigenvalue tuple and eigenspace dimension"""
    return [(a, tuple(monodromy(a, f.ctx)), m) for a, m in f.atoms]


def canonical_flag(f: LocalFlatDatum) -> Tuple[FlagStep, ...]:
    """The only quasi-parabolic structure compatible with a strict exponent"""
    repeated = [a for a, m in f.atoms if m > 1]
    if repeated:
        raise PreconditionError(f"exponents {repeated} repeat; the flag is unique only for strict exponents")
    # distinct exponents give distinct monodromy eigenvalues, one line each
    return tuple(FlagStep(a, 1) for a, _ in f.atoms)


def _stage_steps(weights: Sequence[int], flag_type: Sequence[int], p: int, level: int) -> Tuple[FlagStep, ...]:
    if level == 0:
        return tuple(FlagStep(0, l) for l in flag_type)
    stage = LocalParabolicDatum.of(DigitContext(p, level), weights, flag_type)
    return local_pullback(stage).flag


def transitivity_check(e: LocalParabolicDatum, M: int) -> bool:
    """Pull-back at level N agrees with pull-back at level N-M followed by level M"""
    s1, s2, monotone = split_tuple_monotone(e.weights, M)
    if not monotone:
        raise PreconditionError(f"weights {list(e.weights)} do not split monotonically at M={M}")
    p, N = e.ctx.p, e.ctx.N
    outer = _stage_steps(s2, e.flag_type, p, N - M)
    inner = _stage_steps(s1, e.flag_type, p, M)
    if [s.rank for s in outer] != [s.rank for s in inner]:
        return False
    recombined = tuple(FlagStep(a1.exponent + p ** M * a2.exponent, a1.rank) for a1, a2 in zip(inner, outer))
    two_stage = ParabolicFlatDatum(LocalFlatDatum(e.ctx, recombined), recombined)
    direct = local_pullback(e)
    logger.debug("transitivity at M=%d: direct=%s two-stage=%s", M, direct.flag, two_stage.flag)
    return direct == two_stage
