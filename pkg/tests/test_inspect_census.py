#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from census import trace_spectrum
from inspect_census import inspect_census, load_table
from models import table_to_json
from tests.conftest import FIXTURES


def test_load_table_csv_and_json(tmp_path, f13):
    table = trace_spectrum(f13)
    path = tmp_path / "census_13.json"
    path.write_text(table_to_json(table), encoding="utf-8")
    assert load_table(str(path)) == table
    assert load_table(str(FIXTURES / "census_13.csv")) == table


def test_inspect_full_table(capsys):
    inspect_census(str(FIXTURES / "census_13.csv"))
    out = capsys.readouterr().out
    assert "--- Recensement : census_13.csv ---" in out
    assert "q = 13" in out
    assert "classes de traces : 4" in out
    assert "d :" not in out


def test_inspect_single_trace_with_members(capsys):
    inspect_census(str(FIXTURES / "census_13.csv"), trace=6, members=True)
    out = capsys.readouterr().out
    assert "d : 2, 12" in out
    assert "3, 4, 5" not in out


def test_inspect_missing_trace(capsys):
    inspect_census(str(FIXTURES / "census_13.csv"), trace=10)
    assert "Aucun paramètre de trace A = 10" in capsys.readouterr().out


def test_inspect_missing_file(capsys, tmp_path):
    inspect_census(str(tmp_path / "absent.csv"))
    assert "n'a pas été trouvé" in capsys.readouterr().out


def test_inspect_broken_file(capsys, tmp_path):
    path = tmp_path / "broken.csv"
    path.write_text("A,N\n1,2\n", encoding="utf-8")
    inspect_census(str(path))
    assert "Erreur de lecture" in capsys.readouterr().out
