import json

from click.testing import CliRunner

from heckecells.cli import cli, rat_str, table_from_json, table_to_json, \
    tables_equal
from heckecells import classify


def run(*args):
    return CliRunner().invoke(cli, args)


def test_rat_str():
    from fractions import Fraction
    assert rat_str(Fraction(1, 2)) == "1/2"
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(Fraction(5, 1)) == 5
    assert rat_str(2) == 2


def test_usage_errors_exit_two():
    assert run("classify").exit_code == 2
    assert run("classify", "--family", "nope").exit_code == 2
    assert run("classify", "--family", "2D").exit_code == 2
    assert run("symbols", "arrangements", "--set", "0,1,2").exit_code == 2
    assert run("verify", "--suite", "wat").exit_code == 2


def test_classify_3d4_json_shape():
    res = run("classify", "--family", "3D4")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["family"] == "3D4"
    assert sum(len(c["objects"]) for c in doc["cells"]) == 8
    assert all(doc["checks"].values())


def test_classify_2d_json_shape():
    res = run("classify", "--family", "2D", "--n", "4")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["family"] == "2D" and doc["n"] == 4
    for cell in doc["cells"]:
        assert "M" in cell and "N" in cell
        for obj in cell["objects"]:
            assert set(obj) >= {"eta", "cuspidal"}
    total = sum(len(c["objects"]) for c in doc["cells"])
    assert total == 10


def test_classify_roundtrip():
    for fam, n in (("2A", 4), ("2D", 4), ("3D4", None), ("2E6", None)):
        table = classify.classify(fam, n)
        doc = json.loads(json.dumps(table_to_json(table)))
        assert tables_equal(table_from_json(doc), table)


def test_determinism():
    a = run("classify", "--family", "2D", "--n", "3").output
    b = run("classify", "--family", "2D", "--n", "3").output
    assert a == b
    a = run("cells", "--family", "A", "--n", "2").output
    b = run("cells", "--family", "A", "--n", "2").output
    assert a == b


def test_arrangements_command():
    res = run("symbols", "arrangements", "--set", "0,1,2,3,4,5")
    assert res.exit_code == 0
    arrs = json.loads(res.output)
    assert len(arrs) == 5


def test_count_command():
    res = run("symbols", "count", "--n", "4")
    doc = json.loads(res.output)
    assert doc["by_cells"] == doc["by_squares"] == 10


def test_hecke_dump():
    res = run("hecke", "--family", "A", "--n", "2", "--table", "p")
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert all(len(line.split("\t")) == 3 for line in lines)
    assert "e\te\t1" in lines


def test_verify_symbols_suite_passes():
    res = run("verify", "--suite", "symbols")
    assert res.exit_code == 0
    assert "FAIL" not in res.output
    report = json.loads(res.output.strip().split("\n")[-1])
    assert report["failed"] == []


def test_verify_reports_failure(monkeypatch):
    import heckecells.cli as cli_mod
    monkeypatch.setitem(cli_mod.SUITES, "symbols",
                        lambda: {"doomed": False})
    res = run("verify", "--suite", "symbols")
    assert res.exit_code == 1
    assert "FAIL doomed" in res.output
