"""
Tests for the command-line front end: exit codes, reports and exported files
"""

import json
from fractions import Fraction

import pandas as pd
import pytest

from src.boundary import RIGHT_UPPER, build_K
from src.cli import RunReport, build_parser, main, matrix_payload
from src.cli.main import OBJECTS, SUITES


def test_parser_choices():
    parser = build_parser()
    args = parser.parse_args(["verify", "appendixD", "--n", "3", "--J", "2"])
    assert args.suite == "appendixD" and args.n == 3 and args.J == 2
    assert "all" not in SUITES
    assert set(OBJECTS) >= {"S", "K", "H", "generator"}
    with pytest.raises(SystemExit):
        parser.parse_args(["verify", "nonsense"])


def test_bad_configuration_exits_with_two(tmp_path):
    assert main(["verify", "ybe", "--n", "0", "--report", str(tmp_path / "r.json")]) == 2
    assert main(["verify", "appendixD", "--n", "5", "--J", "4", "--report", str(tmp_path / "r.json")]) == 2


def test_verify_reference_matrices_writes_report(tmp_path):
    path = tmp_path / "report.json"
    code = main(["verify", "appendixD", "--n", "3", "--J", "2", "--points", "1", "--seed", "5",
                 "--report", str(path)])
    assert code == 0
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    report = RunReport(**data)
    assert report.suite == "appendixD"
    assert report.seed == 5
    assert report.passed
    assert report.checks[0].params == {"n": "3", "J": "2"}


def test_perturbed_run_fails_with_witness(tmp_path):
    path = tmp_path / "report.json"
    code = main(["verify", "appendixD", "--n", "2", "--J", "1", "--points", "1", "--perturb",
                 "--report", str(path)])
    assert code == 1
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    witness = data["checks"][0]["witness"]
    assert witness["lhs"] != witness["rhs"]
    assert "point" in witness


def test_build_k_json(tmp_path):
    path = tmp_path / "K.json"
    code = main(["build", "K", "--family", RIGHT_UPPER, "--q", "2", "--nu", "1/3", "--w", "4",
                 "--out", str(path)])
    assert code == 0
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    assert data["ordering"] == "lex"
    assert data["params"] == {"q": "2/1", "nu": "1/3", "w": "4/1"}
    values = {(r, c): v for r, c, v in data["entries"]}
    assert values[(0, 0)] == "1/1"
    assert values[(0, 1)] == "3/2"
    assert values[(1, 1)] == "-1/2"
    K = build_K(2, 1, Fraction(4), Fraction(1, 3), Fraction(2), RIGHT_UPPER).op
    expected = matrix_payload(K, {"object": "K", "n": 2, "I": 1, "J": 1, "family": RIGHT_UPPER},
                              {"q": Fraction(2), "nu": Fraction(1, 3), "w": Fraction(4)})
    assert data == expected


def test_build_s_csv(tmp_path):
    path = tmp_path / "S.csv"
    assert main(["build", "S", "--q", "2", "--u", "9", "--format", "csv", "--out", str(path)]) == 0
    frame = pd.read_csv(path, dtype=str)
    assert list(frame.columns) == ["row", "col", "row_state", "col_state", "value"]
    lookup = {(int(r), int(c)): v for r, c, v in zip(frame["row"], frame["col"], frame["value"])}
    assert lookup[(1, 1)] == "32/35"
    assert lookup[(2, 1)] == "3/35"


def test_build_at_a_pole_exits_with_two(tmp_path, capsys):
    path = tmp_path / "S.json"
    assert main(["build", "S", "--q", "2", "--u", "1/4", "--out", str(path)]) == 2
    assert "Pole" in capsys.readouterr().out
    assert not path.exists()


def test_build_hamiltonian_and_transfer_at_one(tmp_path):
    assert main(["build", "T", "--u", "1", "--out", str(tmp_path / "T.json")]) == 0
    assert main(["build", "generator", "--out", str(tmp_path / "M.json")]) == 0
    with open(tmp_path / "M.json", encoding="utf-8") as f:
        data = json.load(f)
    assert data["dim"] == 4
    off_diagonal = [v for r, c, v in data["entries"] if r != c]
    assert off_diagonal and all(not v.startswith("-") for v in off_diagonal)


def test_builds_are_byte_identical(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        assert main(["build", "H", "--N", "2", "--q", "3", "--nu", "2/5", "--out", str(path)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_simulate_refuses_negative_rates(tmp_path):
    assert main(["simulate", "--q", "1/2", "--nu", "1", "--out", str(tmp_path)]) == 1
    assert not (tmp_path / "jumps.csv").exists()


def test_simulate_writes_jumps_and_histogram(tmp_path):
    code = main(["simulate", "--N", "2", "--tmax", "50", "--events", "2000", "--trajectories", "2",
                 "--seed", "3", "--out", str(tmp_path)])
    assert code == 0
    jumps = pd.read_csv(tmp_path / "jumps.csv")
    assert set(jumps["trajectory"]) == {0, 1}
    histogram = pd.read_csv(tmp_path / "histogram.csv")
    assert list(histogram.columns) == ["state", "label", "fraction", "exact", "deviation"]
    assert abs(histogram["exact"].sum() - 1.0) < 1e-9


def test_settings_read_environment(monkeypatch, tmp_path):
    from src.config import load_config

    monkeypatch.setenv("RKQ_POINTS", "7")
    monkeypatch.setenv("RKQ_REPORT_DIR", str(tmp_path))
    settings = load_config()
    assert settings.points == 7
    assert settings.report_dir == tmp_path
    assert isinstance(settings.seed, int)
