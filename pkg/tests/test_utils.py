import json
from fractions import Fraction

import pytest

from kerovkit.diagrams import Partition, partition_profile, rescale
from kerovkit.transition import AtomicMeasure, feller_measure
from kerovkit.utils import (
    diagram_from_json,
    diagram_to_json,
    format_float,
    load_diagram,
    measure_to_json,
    parse_partition,
    parse_real,
    parse_real_list,
    partition_to_json,
)

SINGLE_BOX = partition_profile(Partition((1,)))


def test_parse_real():
    assert parse_real("0.3") == Fraction(3, 10)
    assert parse_real("3/10") == Fraction(3, 10)
    assert parse_real(" 2 ") == 2
    assert parse_real("-0.5") == Fraction(-1, 2)
    for bad in ("abc", "1/0", ""):
        with pytest.raises(ValueError):
            parse_real(bad)


def test_parse_real_list():
    assert parse_real_list("0.05,0.025") == [Fraction(1, 20), Fraction(1, 40)]
    assert parse_real_list("-0.5, 0 ,0.5") == [Fraction(-1, 2), 0, Fraction(1, 2)]


def test_parse_partition():
    assert parse_partition("4,2,2,2") == Partition((4, 2, 2, 2))
    assert parse_partition("") == Partition()
    for bad in ("1,2", "a", "1.5", "0"):
        with pytest.raises(ValueError):
            parse_partition(bad)


def test_format_float():
    assert format_float(Fraction(1, 3)) == "0.33333333333333331"
    assert format_float(2) == "2"
    assert format_float(0.1) == "0.10000000000000001"


def test_json_encoders():
    assert partition_to_json(Partition((3, 1))) == {"partition": [3, 1]}
    assert diagram_to_json(SINGLE_BOX) == {"breakpoints": [[-1, 1], [0, 2], [1, 1]]}
    half = rescale(SINGLE_BOX, Fraction(1, 2))
    assert diagram_to_json(half) == {
        "breakpoints": [["-1/2", "1/2"], [0, 1], ["1/2", "1/2"]]
    }
    assert diagram_from_json(json.loads(json.dumps(diagram_to_json(half)))) == half


def test_measure_to_json():
    assert measure_to_json(feller_measure(2)) == {
        "exact": True,
        "atoms": [[-2, 3, 8], [0, 1, 4], [2, 3, 8]],
    }
    floats = AtomicMeasure(((0, 0.25), (1, 0.75)))
    assert measure_to_json(floats) == {"exact": False, "atoms": [[0.0, 0.25], [1.0, 0.75]]}


def test_diagram_from_json_tries_each_layout():
    data = {"partition": None, "breakpoints": [[-1, 1], [0, 2], [1, 1]]}
    assert diagram_from_json(data) == SINGLE_BOX
    with pytest.raises(ValueError, match="partition: key missing"):
        diagram_from_json({"rows": [1]})
    with pytest.raises(ValueError, match="breakpoints"):
        diagram_from_json({"breakpoints": [[-1, 1], [0, 3], [1, 1]]})


def test_load_diagram(tmp_path):
    path = tmp_path / "hook.json"
    path.write_text(json.dumps({"partition": [2, 1]}), encoding="utf-8")
    assert load_diagram(path) == partition_profile(Partition((2, 1)))

    path = tmp_path / "box.json"
    path.write_text(json.dumps({"breakpoints": [["-1", "1"], ["0", "2"], ["1", "1"]]}), encoding="utf-8")
    assert load_diagram(str(path)) == SINGLE_BOX


def test_load_diagram_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_diagram(tmp_path / "missing.json")
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ValueError):
        load_diagram(path)
