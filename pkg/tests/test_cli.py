import io
import json
from fractions import Fraction

import pandas as pd
import pytest

from kerovkit.cli import main

# K(0) and the upper bound at z0 = 0, eps = 0.3 for the staircase (4,3,2,1)
STAIRCASE_K0 = Fraction(146, 256)
STAIRCASE_UPPER = STAIRCASE_K0 + (Fraction(3, 13) * 40 + Fraction(1, 11) * 70) / 256


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_transition_json(tmp_registry, capsys):
    assert main(["transition", "--partition", "2,1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"exact": True, "atoms": [[-2, 3, 8], [0, 1, 4], [2, 3, 8]]}


def test_transition_csv(tmp_registry, capsys):
    assert main(["transition", "--diagram", "single-box", "--format", "csv"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(frame.columns) == ["location", "weight"]
    assert frame["location"].tolist() == [-1.0, 1.0]
    assert frame["weight"].tolist() == [0.5, 0.5]


def test_cdf_exact_and_approximate(tmp_registry, capsys):
    assert main(["cdf", "--diagram", "staircase-4", "--t", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == pytest.approx(float(STAIRCASE_K0))
    assert payload["left_limit"] == pytest.approx(110 / 256)
    assert payload["note"] == "exact"

    assert main(["cdf", "--diagram", "triangle", "--t", "1", "--nmax", "64"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["value"] - 0.75) <= payload["error_bound"]
    assert payload["resolution"] == 64


def test_metric(tmp_registry, capsys):
    assert main(["metric", "--a", "empty", "--b", "single-box"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_bound_upper_and_lower(tmp_registry, capsys):
    assert main(["bound", "--omega", "staircase-4", "--z0", "0", "--eps", "0.3"]) == 0
    upper = json.loads(capsys.readouterr().out)
    assert upper["side"] == "upper"
    assert upper["z_star"] == pytest.approx(1.3)
    assert upper["bound_value"] == pytest.approx(float(STAIRCASE_UPPER))
    assert upper["reference"] == "exact"

    assert main(["bound", "--omega", "staircase-4", "--z0", "0", "--eps", "0.3", "--side", "lower"]) == 0
    lower = json.loads(capsys.readouterr().out)
    assert lower["bound_value"] == pytest.approx(1 - float(STAIRCASE_UPPER))
    assert lower["z_star"] == pytest.approx(-1.3)


def test_bound_with_a_closed_form_law(tmp_registry, capsys):
    assert main(["bound", "--omega", "triangle", "--z0", "0", "--eps", "0.1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["reference"] == "arcsine"
    assert payload["z_star"] == pytest.approx(0.2)


def test_bound_without_a_root(tmp_registry, capsys):
    assert main(["bound", "--omega", "empty", "--z0", "0", "--eps", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"side": "upper", "bound_value": None, "z_star": None}


def test_growth_commands(tmp_registry, capsys):
    assert main(["growth-check", "--max-n", "6"]) == 0
    assert capsys.readouterr().out.strip() == "OK"

    assert main(["growth-sample", "--steps", "2", "--seed", "3"]) == 0
    lines = _json_lines(capsys.readouterr().out)
    assert [line["step"] for line in lines] == [0, 1, 2]
    assert lines[0]["partition"] == []
    assert lines[1]["partition"] == [1]
    assert all(line["rng"] == "philox4x64-10" and line["seed"] == 3 for line in lines)


def test_rate_tables(tmp_registry, tmp_path, capsys):
    assert main(["staircase-rate", "--n-list", "2,4"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["N"].tolist() == [2, 4]
    assert list(frame.columns) == ["N", "n", "sup_error", "scaled_error", "atom_floor"]

    out = tmp_path / "metric.csv"
    assert main(["metric-rate", "--n-list", "2", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["N", "distance", "scaled_distance"]
    assert len(frame) == 1


def test_theorem_sweep(tmp_registry, tmp_path, capsys):
    envelope = tmp_path / "envelope.csv"
    argv = [
        "theorem-sweep",
        "--omega",
        "staircase-4",
        "--eps",
        "0.5",
        "--z0=0",
        "--samples",
        "1",
        "--moves",
        "3",
        "--envelope-out",
        str(envelope),
    ]
    assert main(argv) == 0
    rows = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(rows) == 1
    assert not rows["violation"].any()
    assert pd.read_csv(envelope)["epsilon"].tolist() == [0.5]


@pytest.mark.parametrize(
    "argv",
    [
        ["transition", "--partition", "1,2"],
        ["bound", "--omega", "no-such-diagram", "--z0", "0", "--eps", "1"],
        ["cdf", "--diagram", "staircase-4", "--t", "abc"],
        ["bound", "--omega", "staircase-4", "--z0", "0", "--eps", "0"],
        ["theorem-sweep", "--omega", "staircase-4", "--eps", "0.5", "--delta", "0.5", "--samples", "1"],
    ],
)
def test_invalid_input_exits_with_two(tmp_registry, capsys, argv):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit):
        main([])
