"""Parameter sweeps over (p, g, r) and weight vectors

Rows come out in grid order (p, then g, then r, then lexicographic weights)
whatever the number of workers.
"""

import csv
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

import psutil

from dormant.config import SweepConfig
from dormant.counting.formula import (
    Rank2CountInput,
    check_hypotheses,
    count_rank2,
    enumerate_weight_vectors,
    float_oracle_escalating,
    theta_characteristic_count,
    weight_vector_count,
)
from dormant.errors import GridOverflow

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "p", "g", "r", "weights", "parity_ok", "gap_ok", "bound_ok", "degL_even",
    "count", "pgl_count", "oracle_lo", "oracle_hi",
]

_Key = Tuple[int, int, Tuple[int, ...]]


@dataclass(frozen=True)
class SweepRow:
    p: int
    g: int
    r: int
    weights: str
    parity_ok: bool
    gap_ok: bool
    bound_ok: bool
    degL_even: bool
    count: str
    pgl_count: str
    oracle_lo: str
    oracle_hi: str


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]
    disagreements: List[SweepRow]

    @property
    def summary(self) -> str:
        return f"{len(self.rows)} rows, {len(self.disagreements)} oracle disagreements"


def format_weights(pairs: Iterable[Tuple[int, int]]) -> str:
    return ";".join(f"{a1},{a2}" for a1, a2 in pairs)


def grid_points(config: SweepConfig) -> List[Tuple[int, int, int]]:
    """(p, g, r) triples with 2g - 2 + r > 0"""
    return [(p, g, r) for p, g, r in itertools.product(config.p, config.g, config.r) if 2 * g - 2 + r > 0]


def estimate_rows(config: SweepConfig) -> int:
    return sum(
        weight_vector_count(p, g, r, config.weights, config.degL_even) for p, g, r in grid_points(config)
    )


def _evaluate(key: _Key, oracle: bool, precision: int) -> Tuple[Fraction, str, str, Optional[bool]]:
    p, g, b_values = key
    inp = Rank2CountInput(p, g, len(b_values), tuple((0, b) for b in b_values))
    count = count_rank2(inp)
    if not oracle:
        return count, "", "", None
    enclosure = float_oracle_escalating(inp, precision)
    return count, str(enclosure.lo), str(enclosure.hi), enclosure.contains(count)


def _evaluate_star(args):
    return _evaluate(*args)


def _worker_count(config: SweepConfig) -> int:
    if config.workers is not None:
        return config.workers
    return psutil.cpu_count(logical=False) or 1


def run_sweep(config: SweepConfig) -> SweepResult:
    estimate = estimate_rows(config)
    if estimate > config.max_rows:
        raise GridOverflow("refusing to run the sweep", estimate, config.max_rows)

    inputs: List[Rank2CountInput] = []
    for p, g, r in grid_points(config):
        inputs.extend(enumerate_weight_vectors(p, g, r, config.weights, config.degL_even))

    # the count depends on the pairs only through the sorted differences
    keys: List[_Key] = sorted({(inp.p, inp.g, inp.b_values) for inp in inputs})
    jobs = [(key, config.oracle, config.precision) for key in keys]
    workers = _worker_count(config)
    logger.info("sweeping %d inputs (%d distinct) with %d workers", len(inputs), len(keys), workers)
    if workers == 1 or len(jobs) < 2:
        values = list(map(_evaluate_star, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    evaluated: Dict[_Key, Tuple[Fraction, str, str, Optional[bool]]] = dict(zip(keys, values))

    rows: List[SweepRow] = []
    disagreements: List[SweepRow] = []
    for inp in inputs:
        count, lo, hi, agrees = evaluated[(inp.p, inp.g, inp.b_values)]
        flags = check_hypotheses(inp, config.degL_even)
        row = SweepRow(
            p=inp.p,
            g=inp.g,
            r=inp.r,
            weights=format_weights(inp.pairs),
            parity_ok=flags.parity,
            gap_ok=flags.gap,
            bound_ok=flags.prime_bound,
            degL_even=flags.degL_even,
            count=str(count),
            pgl_count=str(count / theta_characteristic_count(2, inp.g)),
            oracle_lo=lo,
            oracle_hi=hi,
        )
        rows.append(row)
        if agrees is False:
            disagreements.append(row)
    if disagreements:
        logger.error("%d rows disagree with the oracle", len(disagreements))
    return SweepResult(rows, disagreements)


def write_csv(rows: Iterable[SweepRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        record = asdict(row)
        writer.writerow([_csv_cell(record[name]) for name in CSV_HEADER])


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_json(rows: Iterable[SweepRow], stream: TextIO) -> None:
    json.dump([asdict(row) for row in rows], stream, indent=2)
    stream.write("\n")
