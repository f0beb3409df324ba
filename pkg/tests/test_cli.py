import json
import subprocess
import sys

import pytest

from starmonoids import cli, enumeration
from starmonoids.families import MonoidFamily as F


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_all(capsys):
    code, out, _ = run(capsys, "census", "--family", "all", "--n", "1..6")
    rep = json.loads(out)
    assert code == 0
    assert len(rep["rows"]) == 36 and all(r["match"] for r in rep["rows"])
    assert rep["tool"] == "starmonoids" and rep["summary"]["passed"]
    assert rep["config"]["n"] == [1, 2, 3, 4, 5, 6]


def test_corrupted_formula_flips_exit(capsys, monkeypatch):
    real = enumeration._formula

    def off_by_one(family, n):
        return real(family, n) + (family is F.PsEnd and n == 3)

    monkeypatch.setattr(enumeration, "_formula", off_by_one)
    code, out, _ = run(capsys, "census", "--family", "PsEnd", "--n", "3")
    assert code == 1
    assert json.loads(out)["summary"]["mismatches"] == [
        "PsEnd n=3: enumerated 29, formula 30"]


def test_check_member(capsys):
    code, out, _ = run(capsys, "check", "--family", "PsEnd", "n=4; 0->1 1->0 2->0 3->0")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["member"] and row["agree"]


def test_check_non_member_is_not_a_failure(capsys):
    code, out, _ = run(capsys, "check", "--family", "PAut", "n=3; 1->0 2->0")
    assert code == 0 and not json.loads(out)["rows"][0]["member"]


@pytest.mark.parametrize("argv", [
    ["check", "n=4; 0->9"],
    ["census", "--n", "9"],
    ["census", "--n", "0"],
    ["census", "--n", "x"],
    ["census", "--family", "Foo"],
    ["greens", "--relation", "Q", "--n", "3"],
    ["verify-generators", "--n", "6"],
    ["frobnicate"],
    ["census", "--bogus"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.strip()


def test_diagnostic_names_input(capsys):
    _, _, err = run(capsys, "check", "n=4; 0->9")
    assert "0->9" in err and len(err.strip().splitlines()) == 1


def test_rank_certify_paut(capsys):
    code, out, _ = run(capsys, "rank-certify", "--family", "PAut", "--n", "3")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["certified"] and row["claimed_rank"] == 3


def test_greens_pair_and_sweep(capsys):
    code, out, _ = run(capsys, "greens", "--family", "IEnd", "--pair",
                       "n=3; 1->0 2->1", "n=3; 1->1 2->0", "--relation", "R")
    assert code == 0 and json.loads(out)["rows"][0]["formula"] is True
    code, out, _ = run(capsys, "greens", "--family", "PAut,PsEnd", "--n", "3")
    assert code == 0 and len(json.loads(out)["rows"]) == 2


def test_other_commands(capsys):
    for argv in (["eggbox", "--family", "PAut", "--n", "3"],
                 ["regular", "--n", "3"],
                 ["verify-generators", "--n", "3..4"],
                 ["decompose", "--n", "2..5"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0, argv
        assert json.loads(out)["summary"]["passed"]


def test_formats(capsys):
    _, out, _ = run(capsys, "census", "--family", "PAut", "--n", "2..3", "--format", "csv")
    assert out.splitlines()[0] == "family,n,formula_count,enumerated_count,filter_count,match"
    assert out.splitlines()[2].startswith("PAut,3,22,22,22")
    _, out, _ = run(capsys, "census", "--family", "PAut", "--n", "3", "--format", "text")
    assert out.rstrip().endswith("PASS")
    _, out, _ = run(capsys, "eggbox", "--family", "PAut", "--n", "3", "--format", "text")
    assert "22 elements" in out


def test_env_defaults(capsys, monkeypatch):
    monkeypatch.setenv("SM_FAMILY", "IEnd")
    monkeypatch.setenv("SM_N", "4")
    monkeypatch.setenv("SM_FORMAT", "csv")
    code, out, _ = run(capsys, "census")
    assert code == 0 and out.splitlines()[1].startswith("IEnd,4,119,")


def test_byte_identical_with_seed(capsys):
    argv = ["greens", "--family", "PEnd", "--n", "5", "--samples", "2000", "--seed", "3"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    assert json.loads(first)["rows"][0]["mode"] == "sampled"


def test_parallel_census_matches(capsys):
    one = run(capsys, "census", "--n", "4")[1]
    two = run(capsys, "census", "--n", "4", "--jobs", "2")[1]
    assert json.loads(one)["rows"] == json.loads(two)["rows"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "starmonoids", "census", "--family", "PAut",
                           "--n", "3", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PAut,3,22" in proc.stdout
