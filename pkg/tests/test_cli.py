import csv
import io
import json
import subprocess
import sys

import pytest

from janowski_lab.cli import InputError, main, parse_values, to_json

EXTREMAL = ["--A", "1", "--B", "-1", "--D", "1", "--E", "-1", "--alpha", "1", "--n", "1",
            "--mu", "2"]
SMALL_GRID = ["--grid-rho-steps", "33", "--grid-sigma-steps", "17"]


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_check_extremal(tmp_path):
    code, text = run(["check", "--lemma", "2.1"] + EXTREMAL, tmp_path)
    assert code == 1
    rep = json.loads(text)["results"][0]["reports"][0]
    assert rep["preconditions_hold"] and not rep["verdict"]
    assert (rep["main_inequality_lhs"], rep["main_inequality_rhs"]) == (576, 64)


def test_check_all_fans_out(tmp_path):
    code, text = run(["check", "--lemma", "all"] + EXTREMAL, tmp_path)
    reports = json.loads(text)["results"][0]["reports"]
    assert [r["lemma_id"] for r in reports] == ["2.1", "2.2", "2.3", "2.4", "2.5", "2.6"]


def test_missing_mu_exits_2(tmp_path, caplog):
    code, text = run(["check", "--lemma", "2.1"] + EXTREMAL[:-2], tmp_path)
    assert code == 2 and text is None
    assert "--mu is required" in caplog.text


def test_bad_flag_exits_2(tmp_path):
    assert main(["check", "--lemma", "9.9"]) == 2


def test_ranges_and_skipped(tmp_path):
    code, text = run(["check", "--lemma", "2.2", "--A", "0.5", "--B", "-0.5", "--D", "0:0.5:0.25",
                      "--E", "0.25", "--mu", "0.5"], tmp_path)
    body = json.loads(text)
    assert len(body["results"]) == 1  # D = 0 and D = 0.25 are not above E
    assert len(body["skipped"]) == 2


def test_parse_values():
    assert parse_values("0:0.5:0.25") == [0.0, 0.25, 0.5]
    assert parse_values("1:3:1", integer=True) == [1, 2, 3]
    with pytest.raises(InputError):
        parse_values("0:1:0")
    with pytest.raises(InputError):
        parse_values("1:2:0.5", integer=True)


def test_oracle_small_grid(tmp_path):
    code, text = run(["oracle", "--operator", "linear"] + EXTREMAL + SMALL_GRID, tmp_path)
    assert code == 1
    res = json.loads(text)["results"][0]
    assert res["oracle"]["max_value"] == pytest.approx(0.5)
    assert res["closed_form_verdict"] is False and res["agrees"] is True
    assert "flags" in res


def test_bounds_classical_values(tmp_path):
    code, text = run(["bounds", "--lambda", "0:0.5:0.5", "--n", "1", "--mu-prime", "2"], tmp_path)
    assert code == 0
    rows = json.loads(text)["rows"]

    def get(kind, lam):
        return next(r["delta"] for r in rows
                    if r["kind"] == kind and r["lambda"] == lam and r["classical"])

    assert get("SstarParen_thm21", 0.5) == pytest.approx(0.5, abs=1e-12)
    assert get("SstarBracketLambda_thm22", 0.5) == pytest.approx(0.5 / 2.75, abs=1e-12)
    assert get("SstarOrderSubord_thm22", 0.0) == pytest.approx(0.2, abs=1e-12)


def test_bounds_csv_includes_classical_column(tmp_path):
    code, text = run(["bounds", "--lambda", "0.5", "--n", "2", "--format", "csv"], tmp_path, "b.csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert {r["classical"] for r in rows} == {"True", "False"}
    assert any(r["n"] == "1" and r["mu_prime"] == "2" for r in rows)


def test_csv_only_for_bounds(tmp_path):
    code, _ = run(["check", "--lemma", "2.1", "--format", "csv"] + EXTREMAL, tmp_path)
    assert code == 2


def test_membership_koebe_and_identity(tmp_path):
    code, text = run(["membership", "--A", "1", "--B", "-1", "--koebe"], tmp_path)
    assert code == 0 and json.loads(text)["holds"]
    code, text = run(["membership", "--A", "0.5", "--B", "0"], tmp_path)
    assert code == 0 and json.loads(text)["worst_margin"] == pytest.approx(0.5)


def test_membership_coefficient_file(tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("0 0\n1 0\n0.1 0\n")
    code, _ = run(["membership", "--A", "1", "--B", "-1", "--coeff-file", str(f)], tmp_path)
    assert code == 0
    f.write_text("0 0\n1 zero\n")
    code, _ = run(["membership", "--A", "1", "--B", "-1", "--coeff-file", str(f)], tmp_path)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["check", "--lemma", "all"] + EXTREMAL,
    ["oracle", "--lemma", "2.5", "--A", "0.5", "--B", "-0.5", "--D", "0.3", "--E", "-0.3",
     "--mu", "0.5", "--n", "2"] + SMALL_GRID,
    ["implication-sweep", "--lemma", "2.1", "--A", "0.5", "--B", "-0.5", "--D", "0.3",
     "--E", "-0.3", "--mu", "0.5", "--trials", "10", "--seed", "3"],
    ["bounds", "--lambda", "0:0.9:0.3"],
    ["membership", "--A", "1", "--B", "-1", "--koebe"],
])
def test_config_round_trip_is_byte_identical(tmp_path, argv):
    _, first = run(argv, tmp_path, "a.json")
    _, second = run([argv[0], "--config", str(tmp_path / "a.json")], tmp_path, "b.json")
    assert first == second


def test_config_wrong_command(tmp_path):
    run(["bounds", "--lambda", "0.5"], tmp_path, "a.json")
    assert main(["check", "--config", str(tmp_path / "a.json")]) == 2


def test_report_independent_of_threads(tmp_path, monkeypatch):
    argv = ["implication-sweep", "--lemma", "all", "--A", "0.5", "--B", "-0.5", "--D", "0.3",
            "--E", "-0.3", "--mu", "0.5", "--trials", "8"]
    monkeypatch.setenv("JANOWSKI_LAB_THREADS", "1")
    _, one = run(argv, tmp_path, "1.json")
    monkeypatch.setenv("JANOWSKI_LAB_THREADS", "4")
    _, four = run(argv, tmp_path, "4.json")
    assert one == four


def test_json_floats_round_trip():
    x = 0.1 + 0.2
    assert json.loads(to_json({"x": x}))["x"] == x
    assert json.loads(to_json({"x": float("inf")}))["x"] == "Infinity"


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "janowski_lab.cli", "check", "--lemma", "2.1"]
                       + EXTREMAL, capture_output=True, text=True)
    assert r.returncode == 1
    assert json.loads(r.stdout)["results"][0]["reports"][0]["verdict"] is False
