"""Harder-Narasimhan polygons, the oper polygon and the dominance order

Polygons are exact: abscissae are ranks, ordinates are Fractions.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, List, Sequence, Tuple

from dormant.errors import InputError

logger = logging.getLogger(__name__)

Vertex = Tuple[int, Fraction]


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        vertices = tuple((int(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 2 or vertices[0] != (0, 0):
            raise InputError("a polygon starts at (0, 0) and has at least one segment")
        if any(right[0] <= left[0] for left, right in zip(vertices, vertices[1:])):
            raise InputError("polygon abscissae must be strictly increasing")
        slopes = self.slopes
        if any(right >= left for left, right in zip(slopes, slopes[1:])):
            raise InputError(f"segment slopes {[str(s) for s in slopes]} are not strictly decreasing")

    @property
    def slopes(self) -> List[Fraction]:
        return [
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])
        ]

    @property
    def endpoint(self) -> Vertex:
        return self.vertices[-1]

    def height_at(self, x: int) -> Fraction:
        """Piecewise-linear height at an abscissa inside [0, width]"""
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
        raise InputError(f"x={x} lies outside [0, {self.endpoint[0]}]")


def log_canonical_degree(g: int, r: int) -> int:
    k = 2 * g - 2 + r
    if g < 0 or r < 0 or k <= 0:
        raise InputError(f"need g, r >= 0 and 2g-2+r > 0, got g={g} r={r}")
    return k


def oper_polygon(n: int, a: int, g: int, r: int) -> ConvexPolygon:
    k = log_canonical_degree(g, r)
    if n < 1:
        raise InputError(f"rank must be positive, got n={n}")
    return ConvexPolygon(tuple((j, Fraction(j * a - j * (j - 1) * k // 2)) for j in range(n + 1)))


def hn_polygon(subquotients: Sequence[Tuple[int, int]]) -> ConvexPolygon:
    """Cumulative polygon of HN subquotients (rank, degree), top piece first"""
    if not subquotients:
        raise InputError("at least one HN subquotient is required")
    vertices = [(0, Fraction(0))]
    for rank, degree in subquotients:
        if rank < 1:
            raise InputError(f"subquotient ranks must be positive, got {rank}")
        x, y = vertices[-1]
        vertices.append((x + rank, y + degree))
    return ConvexPolygon(tuple(vertices))


def _check_endpoints(P: ConvexPolygon, Q: ConvexPolygon):
    if P.endpoint != Q.endpoint:
        raise InputError(f"polygons end at {_fmt(P.endpoint)} and {_fmt(Q.endpoint)}; dominance needs a common endpoint")


def _fmt(vertex: Vertex) -> str:
    return f"({vertex[0]}, {vertex[1]})"


def dominates(P: ConvexPolygon, Q: ConvexPolygon) -> bool:
    """P lies on or above Q"""
    _check_endpoints(P, Q)
    xs = sorted({x for x, _ in P.vertices} | {x for x, _ in Q.vertices})
    return all(P.height_at(x) >= Q.height_at(x) for x in xs)


def oper_match(P: ConvexPolygon, n: int, a: int, g: int, r: int) -> bool:
    oper = oper_polygon(n, a, g, r)
    _check_endpoints(P, oper)
    return P.vertices == oper.vertices


@dataclass(frozen=True)
class SlopeGapReport:
    gaps: Tuple[Fraction, ...]
    bound: int
    gaps_ok: bool
    spread: Fraction
    spread_ok: bool


def slope_gap_report(subquotients: Sequence[Tuple[int, int]], g: int, r: int) -> SlopeGapReport:
    k = log_canonical_degree(g, r)
    slopes = hn_polygon(subquotients).slopes
    gaps = tuple(upper - lower for upper, lower in zip(slopes, slopes[1:]))
    rank = sum(rank for rank, _ in subquotients)
    spread = slopes[0] - slopes[-1]
    return SlopeGapReport(
        gaps=gaps,
        bound=k,
        gaps_ok=all(gap <= k for gap in gaps),
        spread=spread,
        spread_ok=spread <= (rank - 1) * k,
    )


def _compositions(n: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def enumerate_hn_polygons(n: int, total_degree: int, max_gap: int) -> List[ConvexPolygon]:
    """Every convex integer-vertex polygon from (0, 0) to (n, total_degree)
    whose consecutive slope gaps are at most max_gap.

    The top slope lies between the average slope and the average plus
    (n - 1) * max_gap, which bounds the search.
    """
    if n < 1 or max_gap <= 0:
        raise InputError(f"need n >= 1 and a positive gap bound, got n={n} max_gap={max_gap}")
    average = Fraction(total_degree, n)
    found: List[ConvexPolygon] = []

    def extend(ranks: Tuple[int, ...], degrees: List[int], remaining: int):
        index = len(degrees)
        rank = ranks[index]
        if index == len(ranks) - 1:
            candidates = [remaining]
        elif index == 0:
            lo = ceil(rank * average)
            hi = floor(rank * (average + (n - 1) * max_gap))
            candidates = list(range(lo, hi + 1))
        else:
            previous = Fraction(degrees[-1], ranks[index - 1])
            lo = ceil(rank * (previous - max_gap))
            hi = ceil(rank * previous) - 1
            candidates = list(range(lo, hi + 1))
        for degree in candidates:
            if index:
                previous = Fraction(degrees[-1], ranks[index - 1])
                gap = previous - Fraction(degree, rank)
                if not 0 < gap <= max_gap:
                    continue
            if index == len(ranks) - 1:
                pieces = list(zip(ranks, degrees + [degree]))
                found.append(hn_polygon(pieces))
            else:
                extend(ranks, degrees + [degree], remaining - degree)

    for ranks in _compositions(n):
        extend(ranks, [], total_degree)
    logger.debug("enumerated %d polygons for n=%d total=%d gap<=%d", len(found), n, total_degree, max_gap)
    return found
