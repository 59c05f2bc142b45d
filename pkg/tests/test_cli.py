"""Command-line surface: outputs, exit codes, JSON schema stability."""

import json

import jsonschema
import pytest

from cnfstruct.cli import ANALYZE_SCHEMA, main
from cnfstruct.dimacs import parse_dimacs, write_dimacs
from cnfstruct.transform import gen_Dt


@pytest.fixture()
def dt3_file(tmp_path):
    p = tmp_path / "dt3.cnf"
    p.write_text(write_dimacs(gen_Dt(3)))
    return str(p)


def test_analyze_plain(dt3_file, capsys):
    assert main(["analyze", dt3_file]) == 0
    out = capsys.readouterr().out
    assert "delta 2" in out
    assert "surplus 2" in out
    assert "minvdeg 4" in out
    assert "hitting=yes" in out and "mu=yes" in out and "smu=yes" in out


def test_analyze_json_schema(dt3_file, capsys):
    assert main(["analyze", dt3_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, ANALYZE_SCHEMA)
    assert payload["measures"]["delta"] == 2
    assert payload["measures"]["delta_star"] == 2
    assert payload["class_flags"]["smu"] == "yes"
    assert payload["limits"]["n"] == 14


def test_analyze_stdin_empty(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("p cnf 0 0\n"))
    assert main(["analyze", "-"]) == 0
    out = capsys.readouterr().out
    assert "n 0" in out and "c 0" in out and "minvdeg inf" in out


def test_analyze_respects_limits(dt3_file, capsys):
    assert main(["analyze", dt3_file, "--limits", "n=2"]) == 0
    out = capsys.readouterr().out
    assert "mu=skipped" in out and "limits n=2" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 -1 0\n")
    assert main(["analyze", str(bad)]) == 2
    missing_header = tmp_path / "nohdr.cnf"
    missing_header.write_text("1 0\n")
    assert main(["analyze", str(missing_header)]) == 2
    assert main(["analyze", str(tmp_path / "absent.cnf")]) == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "1..5", "--seq", "nope"])
    assert exc.value.code == 3
    assert main(["generate", "Dt", "1"]) == 3  # parameter out of range
    assert main(["bounds", "4", "--prefix", "3,4"]) == 3  # invalid prefix


def test_bounds_table(capsys):
    assert main(["bounds", "1..12", "--seq", "nm"]) == 0
    rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
    assert rows[0] == ["1", "2"] and rows[10] == ["11", "14"] and rows[11] == ["12", "16"]
    assert main(["bounds", "1..30", "--seq", "nm1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["values"]["6"] == 8 and payload["values"]["13"] == 16
    assert main(["bounds", "4", "--seq", "nm", "--prefix", "2,4,5"]) == 0
    assert capsys.readouterr().out.strip() == "4\t6"


def test_generate_roundtrip(tmp_path, capsys):
    out = tmp_path / "a3.cnf"
    assert main(["generate", "A", "3", "--out", str(out)]) == 0
    F = parse_dimacs(out.read_text())
    assert F.total() == 8
    assert main(["generate", "uclash", "--delta", "5", "--vars", "6"]) == 0
    F = parse_dimacs(capsys.readouterr().out)
    from cnfstruct.classify import hitting_unsat_check
    from cnfstruct.core import measures

    assert measures(F).delta == 5 and measures(F).n == 6
    assert hitting_unsat_check(F.clause_set())
    assert main(["generate", "vmu-sharp", "7"]) == 0
    F = parse_dimacs(capsys.readouterr().out)
    from cnfstruct.bounds import nm
    from cnfstruct.matching import surplus

    assert measures(F).delta == 7 == surplus(F).value
    assert measures(F).minvdeg == nm(7) == 10


def test_reduce_command(tmp_path, capsys):
    src = tmp_path / "mlcr.cnf"
    src.write_text("p cnf 3 4\n1 2 0\n-1 2 -3 0\n-2 3 0\n1 -2 -3 0\n")
    out = tmp_path / "reduced.cnf"
    assert main(["reduce", str(src), "--witnesses", "--out", str(out), "--json"]) == 0
    assert out.read_text() == "p cnf 0 0\n"
    payload = json.loads(capsys.readouterr().out)
    steps = payload["trace"]["steps"]
    assert len(steps) == 1 and steps[0]["kind"] == "surplus"
    assert steps[0]["variables"] == [1, 2, 3]
    assert steps[0]["witness"] is not None


def test_enumerate_command(tmp_path, capsys):
    assert main(["enumerate", "2", "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "catalog-n2.cnfs").exists()
    assert (tmp_path / "catalog-n2.meta.jsonl").exists()
    lines = (tmp_path / "catalog-n2.meta.jsonl").read_text().splitlines()
    assert len(lines) == 2


def test_verify_command(capsys):
    assert main(["verify", "roundtrip"]) == 0
    out = capsys.readouterr().out
    assert "PASS dimacs-round-trip" in out
