import json
import subprocess
import sys
from pathlib import Path

import pytest

from zlab.algebra import parse_table
from zlab.cli import run
from zlab.terms import SIGMA_TEXT

GOLDEN = Path(__file__).parent / "golden"


def zlab(*args):
    return run(list(args))


@pytest.fixture
def two_b(table_file):
    return table_file("2\n1 1\n0 1\n", "2b.tbl")


def test_check_failing_assignment(two_b, capsys):
    assert zlab("check", "--algebra", two_b, "--identity", "x->(y->z) = (x->y)->z") == 1
    out = capsys.readouterr().out
    assert "x=0, y=0, z=0" in out and "lhs=1, rhs=0" in out


def test_check_holds(two_b, capsys):
    assert zlab("check", "--algebra", two_b, "--identity", "x'' = x") == 0
    assert capsys.readouterr().out.startswith("holds")


def test_check_identity_from_file(two_b, tmp_path):
    f = tmp_path / "id.txt"
    f.write_text("# involution\nx'' = x\n")
    assert zlab("check", "--algebra", two_b, "--identity", f"@{f}") == 0


def test_check_builtin_witness():
    assert zlab("check", "--algebra", "witness:w4b", "--identity", SIGMA_TEXT["A14"]) == 0
    assert zlab("check", "--algebra", "witness:w4b", "--identity", SIGMA_TEXT["A11"]) == 1


@pytest.mark.parametrize("args", [
    ["check", "--algebra", "MISSING.tbl", "--identity", "x = x"],
    ["check", "--algebra", "witness:nope", "--identity", "x = x"],
    ["member", "--algebra", "witness:2b", "--variety", "Nope"],
    ["search", "--size", "9"],
    ["count", "--size", "2", "--variety", "A1", "--bogus"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(args, capsys):
    assert zlab(*args) == 2


def test_bad_identity_and_table_exit_2(two_b, table_file, capsys):
    assert zlab("check", "--algebra", two_b, "--identity", "x -> ") == 2
    assert "byte 5" in capsys.readouterr().err
    bad = table_file("2\n0 0\n0 5\n", "bad.tbl")
    assert zlab("check", "--algebra", bad, "--identity", "x = x") == 2


def test_member(capsys):
    assert zlab("member", "--algebra", "witness:2s", "--variety", "SL") == 0
    assert zlab("member", "--algebra", "witness:2b", "--variety", "SL") == 1


def test_search_prints_reparsable_tables(capsys):
    assert zlab("search", "--size", "3", "--variety", "A1", "--fail", "x->(y->z) = (x->z)->y",
                "--up-to-iso", "--all") == 0
    out = capsys.readouterr().out
    blocks = [b for b in out.split("\n\n") if b.strip() and not b.startswith("#")]
    tables = [parse_table(b) for b in blocks]
    assert tables and all(t.size == 3 for t in tables)
    assert "exhausted" in out


def test_search_no_model_exit_1(capsys):
    assert zlab("search", "--size", "3", "--variety", "A3", "--fail", "x->(y->z) = y->(x->z)") == 1


def test_count(capsys):
    assert zlab("count", "--size", "3", "--variety", "I") == 0
    assert capsys.readouterr().out.strip() == "31"
    assert zlab("count", "--size", "3", "--variety", "I", "--up-to-iso") == 0
    assert capsys.readouterr().out.strip() == "17"


def test_classify_report(tmp_path, capsys):
    rep = tmp_path / "c.json"
    assert zlab("classify", "--report", str(rep)) == 0
    doc = json.loads(rep.read_text())
    assert len(doc["terms"]) == 12 and doc["identity_count"] == 66 and doc["class_count"] == 14
    assert "12 terms, 66 identities, 14 classes" in capsys.readouterr().out


def test_poset_symmetric(tmp_path, capsys):
    d = tmp_path / "s.dot"
    assert zlab("poset", "--nodes", "T,SL,BA,S14,S", "--dot", str(d)) == 0
    out = capsys.readouterr().out
    assert "SL < S14" in out and "agree with the reference diagram" in out
    assert '"BA" -> "S";' in d.read_text()


def test_reproduce_matches_golden(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert zlab("reproduce", "--budget", "3", "--report", str(rep)) == 0
    assert rep.read_text() == (GOLDEN / "reproduce_budget3.json").read_text()


def test_reproduce_exports_witnesses(tmp_path, capsys):
    out = tmp_path / "w"
    assert zlab("reproduce", "--witness-dir", str(out)) == 0
    assert parse_table((out / "w4b.tbl").read_text()).table[1] == (2, 3, 2, 3)


def test_reproduce_insufficient_deep_budget(capsys):
    assert zlab("reproduce", "--deep-budget", "3") == 1
    assert "insufficient-budget" in capsys.readouterr().out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "zlab.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("zlab ")
