"""Command-line interface: shapes, determinism, and exit codes."""

import json

import pytest
from click.testing import CliRunner

from orbitforge.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def test_strata_json_deterministic(runner):
    first = _invoke(runner, ["strata", "--d", "4"])
    second = _invoke(runner, ["strata", "--d", "4"])
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["count"] == 12
    assert {"beta", "norm_sq"} <= set(payload["strata"][0])
    assert "warning" not in payload


def test_strata_paper_signs(runner):
    res = _invoke(runner, ["strata", "--d", "4", "--paper-signs"])
    payload = json.loads(res.output)
    types = {tuple(s["beta"]) for s in payload["strata"]}
    assert ("8/7", "9/7", "11/7") in types


def test_strata_rejects_degree_zero(runner):
    res = runner.invoke(main, ["strata", "--d", "0"])
    assert res.exit_code != 0


def test_strata_warns_off_n3(runner):
    res = _invoke(runner, ["strata", "--n", "4", "--d", "2"])
    assert "unverified" in json.loads(res.output)["warning"]


def test_strata_formats_and_svg(runner, tmp_path):
    res = _invoke(runner, ["strata", "--d", "2", "--format", "csv"])
    assert res.output.splitlines()[0] == "beta_0,beta_1,beta_2,norm_sq"
    res = _invoke(runner, ["strata", "--d", "2", "--format", "markdown"])
    assert res.output.startswith("| beta_0 |")
    svg = tmp_path / "strata.svg"
    _invoke(runner, ["strata", "--d", "4", "--svg", str(svg)])
    assert svg.read_text().startswith("<svg")


def test_check_form_distinguished(runner, tmp_path):
    path = tmp_path / "form.json"
    path.write_text(json.dumps([
        {"exponents": [1, 3, 0], "coeff": {"sq": "1/14", "sign": 1}},
        {"exponents": [2, 0, 2], "coeff": {"sq": "1/7", "sign": 1}},
    ]))
    res = _invoke(runner, ["check", "--input", str(path)])
    payload = json.loads(res.output)
    assert payload["outcome"] == "distinguished"
    assert payload["beta"] == ["-11/7", "-9/7", "-8/7"]
    res = _invoke(runner, ["check", "--input", str(path), "--paper-signs"])
    assert json.loads(res.output)["beta"] == ["11/7", "9/7", "8/7"]


def test_check_not_nice_is_data_not_error(runner, tmp_path):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps([
        {"i": 1, "j": 2, "k": 6, "coeff": "1"},
        {"i": 3, "j": 4, "k": 5, "coeff": "1"},
    ]))
    res = _invoke(runner, ["check", "--input", str(path), "--group", "sp"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["outcome"] == "not_nice"
    assert payload["witness"] is not None


def test_check_reports_parse_errors(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[{]")
    res = runner.invoke(main, ["check", "--input", str(path)])
    assert res.exit_code != 0
    assert "parse error" in res.output


def test_minimize_round_trip(runner, tmp_path):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps([
        {"i": 1, "j": 4, "k": 6, "coeff": "1"},
        {"i": 2, "j": 3, "k": 5, "coeff": "1"},
    ]))
    res = _invoke(runner, ["minimize", "--input", str(path)])
    payload = json.loads(res.output)
    assert payload["outcome"] == "distinguished"
    assert payload["beta_norm_sq"] == "1/1"
    assert float(payload["residual"]) <= 1e-12
    assert all(t["coeff"] == {"sq": "1/4", "sign": 1}
               for t in payload["critical_bracket"])
    # The printed bracket is valid input again.
    again = tmp_path / "critical.json"
    again.write_text(json.dumps(payload["critical_bracket"]))
    res2 = _invoke(runner, ["minimize", "--input", str(again)])
    payload2 = json.loads(res2.output)
    assert payload2["critical_bracket"] == payload["critical_bracket"]
    assert all(x == "0" for x in payload2["x"])


def test_minimize_invalid_bracket_exit_code(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([
        {"i": 1, "j": 2, "k": 3, "coeff": "1"},
        {"i": 3, "j": 4, "k": 5, "coeff": "1"},
    ]))
    res = runner.invoke(main, ["minimize", "--input", str(path)])
    assert res.exit_code == 1
    payload = json.loads(res.output)
    assert payload["outcome"] == "invalid_bracket"
    assert payload["violation"] == "jacobi"


def test_minimize_not_distinguished_is_data(runner, tmp_path):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps([
        {"i": 1, "j": 2, "k": 6, "coeff": "1"},
        {"i": 3, "j": 4, "k": 5, "coeff": "1"},
    ]))
    res = _invoke(runner, ["minimize", "--input", str(path)])
    assert res.exit_code == 0
    assert json.loads(res.output)["outcome"] == "not_nice"


def test_classify_shape(runner):
    res = _invoke(runner, ["classify", "--d", "4"])
    payload = json.loads(res.output)
    assert len(payload["strata"]) == 13
    empties = [s for s in payload["strata"] if s["empty"]]
    assert len(empties) == 1 and empties[0]["type"] == ["1/2", "1/2", "3/1"]


def test_table2_row_filter(runner):
    res = _invoke(runner, ["table2", "--row", "24a"])
    payload = json.loads(res.output)
    assert payload["passed"]
    assert [r["row"] for r in payload["rows"]] == ["24.(a)"]
    assert payload["rows"][0]["derivation_multiple"] == "1/4"
    res = runner.invoke(main, ["table2", "--row", "nonexistent"])
    assert res.exit_code != 0


def test_table1_passes(runner):
    res = _invoke(runner, ["table1"])
    assert res.exit_code == 0
    assert json.loads(res.output)["passed"]
