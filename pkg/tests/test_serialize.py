import json
from fractions import Fraction

import pytest

from dormant.charp.digits import DigitContext
from dormant.disc.descent import LocalFlatDatum, LocalParabolicDatum, local_pullback
from dormant.errors import InputError
from dormant.serialize import dumps, fraction_to_json, loads_local, local_to_json, polygon_to_json, to_jsonable
from dormant.stability.polygon import oper_polygon, slope_gap_report


def test_fraction_to_json():
    assert fraction_to_json(Fraction(3)) == 3
    assert fraction_to_json(Fraction(-1, 2)) == "-1/2"


def test_to_jsonable():
    assert to_jsonable({"a": Fraction(1, 2), "s": {3, 1}, "t": (True, None)}) == {
        "a": "1/2", "s": [1, 3], "t": [True, None],
    }
    report = to_jsonable(slope_gap_report([(1, 1), (1, 0)], 1, 1))
    assert report == {"gaps": [1], "bound": 1, "gaps_ok": True, "spread": 1, "spread_ok": True}


def test_polygon_to_json():
    assert polygon_to_json(oper_polygon(2, 1, 2, 0)) == {"vertices": [[0, 0], [1, 1], [2, 0]]}
    assert json.loads(dumps({"P": oper_polygon(1, 3, 2, 0)})) == {"P": {"vertices": [[0, 0], [1, 3]]}}


def test_parabolic_datum_json():
    e = LocalParabolicDatum.of(DigitContext(5, 1), [1, 3], [2, 1])
    data = {"p": 5, "N": 1, "weights": [1, 3], "type": [2, 1]}
    assert local_to_json(e) == data
    assert loads_local(json.dumps(data)) == e


def test_flat_datum_json():
    f = local_pullback(LocalParabolicDatum.of(DigitContext(5, 1), [1, 3], [2, 1]))
    data = local_to_json(f)
    assert data == {"p": 5, "N": 1, "atoms": [[1, 2], [3, 1]], "flag": [[1, 2], [3, 1]]}
    assert loads_local(json.dumps(data)) == f
    assert loads_local('{"p": 5, "N": 1, "atoms": [[3, 1], [1, 2]]}') == f.flat
    assert isinstance(loads_local('{"p": 5, "N": 1, "atoms": []}'), LocalFlatDatum)


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[1, 2]",
        '{"p": 5}',
        '{"p": "5", "N": 1, "atoms": []}',
        '{"p": 5, "N": 1}',
        '{"p": 5, "N": 1, "weights": [1]}',
        '{"p": 5, "N": 1, "atoms": [[1, 2, 3]]}',
        '{"p": 5, "N": 1, "atoms": [[1, 1]], "flag": [[2, 1]]}',
        '{"p": 5, "N": 1, "weights": [7], "type": [1]}',
    ],
)
def test_malformed_local_data(text):
    with pytest.raises(InputError):
        loads_local(text)
