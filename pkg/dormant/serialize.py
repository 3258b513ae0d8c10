"""Canonical JSON shapes shared by the CLI and the sweep writer

Local data:
    {"p": 5, "N": 1, "weights": [1, 3], "type": [2, 1]}
    {"p": 5, "N": 1, "atoms": [[1, 2], [3, 1]], "flag": [[1, 2], [3, 1]]}

Rationals are written as integers when integral and as "num/den" strings
otherwise.
"""

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Dict, Union

from dormant.charp.digits import DigitContext
from dormant.disc.descent import FlagStep, LocalFlatDatum, LocalParabolicDatum, ParabolicFlatDatum
from dormant.errors import InputError
from dormant.stability.polygon import ConvexPolygon

LocalDatum = Union[LocalParabolicDatum, LocalFlatDatum, ParabolicFlatDatum]


def fraction_to_json(q: Fraction) -> Union[int, str]:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return fraction_to_json(value)
    if isinstance(value, ConvexPolygon):
        return polygon_to_json(value)
    if isinstance(value, (LocalParabolicDatum, LocalFlatDatum, ParabolicFlatDatum)):
        return local_to_json(value)
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    return str(value)


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True)


def polygon_to_json(P: ConvexPolygon) -> Dict[str, Any]:
    return {"vertices": [[x, fraction_to_json(y)] for x, y in P.vertices]}


def local_to_json(x: LocalDatum) -> Dict[str, Any]:
    if isinstance(x, LocalParabolicDatum):
        return {"p": x.ctx.p, "N": x.ctx.N, "weights": list(x.weights), "type": list(x.flag_type)}
    if isinstance(x, ParabolicFlatDatum):
        data = local_to_json(x.flat)
        data["flag"] = [[s.exponent, s.rank] for s in x.flag]
        return data
    return {"p": x.ctx.p, "N": x.ctx.N, "atoms": [[a, m] for a, m in x.atoms]}


def _int_pairs(raw: Any, name: str):
    if not isinstance(raw, list) or any(
        not isinstance(item, list) or len(item) != 2 or not all(isinstance(v, int) for v in item) for item in raw
    ):
        raise InputError(f'"{name}" must be a list of [integer, integer] pairs')
    return [tuple(item) for item in raw]


def local_from_json(data: Any) -> LocalDatum:
    if not isinstance(data, dict):
        raise InputError("local datum must be a JSON object")
    try:
        ctx = DigitContext(data["p"], data["N"])
    except KeyError as exc:
        raise InputError(f"local datum is missing {exc.args[0]!r}") from None
    if "weights" in data:
        weights, flag_type = data.get("weights"), data.get("type")
        if not isinstance(weights, list) or not isinstance(flag_type, list):
            raise InputError('"weights" and "type" must both be lists')
        return LocalParabolicDatum.of(ctx, weights, flag_type)
    if "atoms" in data:
        flat = LocalFlatDatum(ctx, tuple(_int_pairs(data["atoms"], "atoms")))
        if "flag" in data:
            steps = tuple(FlagStep(a, l) for a, l in _int_pairs(data["flag"], "flag"))
            return ParabolicFlatDatum(flat, steps)
        return flat
    raise InputError('local datum needs either "weights" and "type" or "atoms"')


def loads_local(text: str) -> LocalDatum:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return local_from_json(data)
