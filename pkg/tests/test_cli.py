import json

import pytest

from codepth3.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    return status, json.loads(capsys.readouterr().out)


def test_series_complete_intersection(capsys):
    status, rep = run(capsys, "series", "--class", "C", "--c", "3", "--e", "5", "--d", "2")
    assert status == 0
    bass = rep["results"]["bass"]
    # num/den reduce to t^2
    assert rep["results"]["mu"] == {"from": 2, "values": [1] + [0] * 12}
    assert bass["num"][0][0] - bass["den"][0][0] == 2


def test_series_class_t(capsys):
    status, rep = run(capsys, "series", "--class", "T", "--l", "2", "--n", "2", "--e", "3", "--d", "0", "--window", "10")
    assert status == 0
    r = rep["results"]
    assert r["f"] == [[0, 2], [1, 2], [2, -2], [3, -1], [4, 1]]
    assert r["g"] == [[0, 1], [1, -1], [2, -2], [3, 1], [5, -1]]
    assert len(r["mu"]["values"]) == 11


def test_series_plateau(capsys):
    status, rep = run(capsys, "series", "--class", "H", "--p", "2", "--q", "1", "--l", "2", "--n", "1", "--e", "3", "--d", "0")
    assert status == 0
    assert rep["flags"] == ["plateau"]
    assert rep["results"]["mu"]["values"][:3] == [1, 2, 2]


def test_inadmissible_is_input_error(capsys):
    status, rep = run(capsys, "series", "--class", "S", "--l", "1", "--e", "3", "--d", "1", "--h", "0")
    assert status == 2
    assert rep["results"]["error"] == "InadmissibleInvariants"


def test_missing_file(capsys):
    status, rep = run(capsys, "classify", "/nonexistent/file.json")
    assert status == 2


@pytest.mark.parametrize("name,cls,sext,exc", [
    ("squares3", "C(3)", [0, 2, 1, 3, 1, 3], "none"),
    ("wxwy", "S", [1, 1, 0, 0, 0, 0], "wxwy"),
    ("h21", "H(2,1)", [1, 2, 1, 2, 1, 1], "wxwyz"),
])
def test_classify_corpus(capsys, name, cls, sext, exc):
    status, rep = run(capsys, "classify", name)
    assert status == 0
    r = rep["results"]
    assert (r["class"], r["sextuple"], r["exception"]) == (cls, sext, exc)


def test_classify_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"field": 10007, "vars": 3, "gens": [[[1, [1, 1, 0]]], [[1, [1, 0, 1]]]]}))
    status, rep = run(capsys, "classify", str(path))
    assert status == 0 and rep["results"]["class"] == "S"
    path.write_text(json.dumps({"field": 0, "vars": 3, "names": ["x", "y", "z"], "gens": ["x**2", "y**2", "z**2"]}))
    status, rep = run(capsys, "classify", str(path))
    assert rep["results"]["class"] == "C(3)"


def test_bad_field(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"field": 9, "vars": 1, "gens": [[[1, [2]]]]}))
    status, _ = run(capsys, "classify", str(path))
    assert status == 2


def test_verify(capsys):
    status, rep = run(capsys, "verify", "--formula", "truncatedI", "--degree", "8")
    assert status == 0 and rep["results"]["truncatedI"]["pass"]
    status, rep = run(capsys, "verify", "--formula", "exteriorI")
    assert status == 0


def test_verify_all(capsys):
    status, rep = run(capsys, "verify", "--all")
    assert status == 0
    assert len(rep["results"]) == 14


def test_growth(capsys):
    status, rep = run(capsys, "growth", "--class", "S", "--l", "1", "--e", "2", "--d", "0")
    assert status == 0
    assert rep["results"]["exception"] == "wxwy"
    assert rep["results"]["gamma_window"] == [3, 2]
    status, rep = run(capsys, "growth", "--class", "C", "--c", "3", "--e", "3", "--d", "0")
    assert status == 2


def test_examples(capsys):
    status, rep = run(capsys, "examples")
    assert status == 0
    assert {"squares3", "wxwy", "h21", "gorenstein5", "golod"} <= set(rep["results"])


def test_deterministic_and_round_trip(capsys):
    argv = ["series", "--class", "B", "--l", "4", "--n", "2", "--e", "3", "--d", "0"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert json.dumps(json.loads(first), sort_keys=True, indent=1) + "\n" == first


def test_window_env(capsys, monkeypatch):
    monkeypatch.setenv("CODEPTH3_WINDOW", "4")
    _, rep = run(capsys, "series", "--class", "C", "--c", "1", "--e", "1", "--d", "0")
    assert rep["results"]["betti"] == [1, 1, 1, 1, 1]
    monkeypatch.setenv("CODEPTH3_WINDOW", "four")
    status, _ = run(capsys, "series", "--class", "C", "--c", "1", "--e", "1", "--d", "0")
    assert status == 2


def test_table_format(capsys):
    assert main(["--format", "table", "classify", "squares3"]) == 0
    out = capsys.readouterr().out
    assert "results.class" in out and "C(3)" in out
