#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import pytest

from cli.main import EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, main
from models import table_from_csv, table_from_json


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ============================================================================
# census
# ============================================================================

def test_census_csv_matches_fixture(capsys, census_13_csv):
    code, out, _ = _run(capsys, "census", "--p", "13")
    assert code == EXIT_OK
    assert out == census_13_csv


def test_census_json(capsys):
    code, out, _ = _run(capsys, "census", "--p", "13", "--format", "json")
    assert code == EXIT_OK
    table = table_from_json(out)
    assert [r.trace for r in table.records] == [-6, -2, 2, 6]


def test_census_format_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("EDWARDS_CENSUS_OUTPUT_FORMAT", "json")
    code, out, _ = _run(capsys, "census", "--p", "7")
    assert code == EXIT_OK
    assert json.loads(out)["q"] == 7


def test_census_to_file(capsys, tmp_path, census_13_csv):
    target = tmp_path / "out" / "census_13.csv"
    code, out, err = _run(capsys, "census", "--p", "13", "--threads", "2", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert "✅" in err
    assert table_from_csv(target.read_text(encoding="utf-8")) == table_from_csv(census_13_csv)


def test_census_bound_exceeded(capsys):
    code, _, err = _run(capsys, "census", "--p", "101", "--m", "2", "--max-q", "1000")
    assert code == EXIT_PRECONDITION
    assert "10201" in err


def test_census_needs_p(capsys):
    code, _, _ = _run(capsys, "census")
    assert code == EXIT_USAGE


def test_census_rejects_composite(capsys):
    code, _, _ = _run(capsys, "census", "--p", "15")
    assert code == EXIT_PRECONDITION


# ============================================================================
# verify
# ============================================================================

def test_verify_katz(capsys):
    code, out, _ = _run(capsys, "verify", "--p", "13", "--theorem", "katz")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["status"] == "verified"
    assert {c["trace"] for c in report["details"]} == {-2, 6}


def test_verify_alias(capsys):
    code, out, _ = _run(capsys, "verify", "--p", "13", "--theorem", "eq19")
    assert code == EXIT_OK
    assert json.loads(out)["theorem"] == "8.4"


def test_verify_all(capsys):
    code, out, _ = _run(capsys, "verify", "--p", "7")
    assert code == EXIT_OK
    reports = json.loads(out)
    assert [r["theorem"] for r in reports] == ["6.4", "6.5", "7.7", "7.8", "8.1", "huff"]


def test_verify_wrong_residue_class(capsys):
    code, _, err = _run(capsys, "verify", "--p", "7", "--theorem", "katz")
    assert code == EXIT_PRECONDITION
    assert "q = 7" in err


def test_verify_bijection(capsys):
    code, out, _ = _run(capsys, "verify", "--p", "13", "--theorem", "bijection", "--d", "4")
    assert code == EXIT_OK
    assert json.loads(out)["lambdas"] == ["5", "11"]


def test_verify_bijection_needs_d(capsys):
    code, _, _ = _run(capsys, "verify", "--p", "13", "--theorem", "bijection")
    assert code == EXIT_USAGE


def test_verify_unknown_theorem(capsys):
    code, _, _ = _run(capsys, "verify", "--p", "13", "--theorem", "9.9")
    assert code == EXIT_USAGE


# ============================================================================
# map
# ============================================================================

def test_map_point_in_kernel(capsys):
    code, out, _ = _run(capsys, "map", "--name", "psi", "--p", "13", "--d", "2", "--point", "0,1")
    assert code == EXIT_OK
    assert out.strip() == "inf"


def test_map_report(capsys):
    code, out, _ = _run(capsys, "map", "--name", "psi-dual", "--p", "13", "--d", "3")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["degree"] == 2
    assert report["membership"] is True


def test_map_point_off_curve(capsys):
    code, _, _ = _run(capsys, "map", "--name", "psi", "--p", "13", "--d", "2", "--point", "3,4")
    assert code == EXIT_PRECONDITION


def test_map_bad_point_literal(capsys):
    code, _, _ = _run(capsys, "map", "--name", "psi", "--p", "13", "--d", "2", "--point", "0;1")
    assert code == EXIT_USAGE


def test_map_needs_extension(capsys):
    # -1 n'est pas un carré modulo 7: σ₁ vit sur F_49
    code, _, err = _run(capsys, "map", "--name", "s1", "--p", "7", "--d", "3", "--point", "0,0")
    assert code == EXIT_PRECONDITION
    assert "--allow-extension" in err


def test_map_huff(capsys):
    code, out, _ = _run(capsys, "map", "--name", "huff", "--p", "13", "--a", "1", "--b", "2")
    assert code == EXIT_OK
    assert out.strip().isdigit()


def test_map_unknown_name(capsys):
    code, _, _ = _run(capsys, "map", "--name", "nope", "--p", "13", "--d", "2")
    assert code == EXIT_USAGE


def test_map_degenerate_parameter(capsys):
    code, _, _ = _run(capsys, "map", "--name", "psi", "--p", "13", "--d", "1")
    assert code == EXIT_PRECONDITION


# ============================================================================
# classify, deuring, orbit
# ============================================================================

def test_classify(capsys):
    code, out, _ = _run(capsys, "classify", "--p", "13", "--d", "3")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["trace"] == -2
    assert record["original_isogenous"] is True


def test_deuring(capsys):
    code, out, _ = _run(capsys, "deuring", "--p", "7")
    assert code == EXIT_OK
    assert json.loads(out)["roots"] == ["2", "4", "6"]


def test_orbit(capsys):
    code, out, _ = _run(capsys, "orbit", "--p", "13", "--d", "2")
    assert code == EXIT_OK
    assert json.loads(out)["orbit"] == ["2", "12", "7"]


@pytest.mark.parametrize("argv", [["frobnicate"], [], ["census", "--p", "13", "--log-level", "loud"]])
def test_usage_errors(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == EXIT_USAGE


def test_log_level_is_case_insensitive(capsys):
    code, _, _ = _run(capsys, "orbit", "--p", "13", "--d", "2", "--log-level", "debug")
    assert code == EXIT_OK
