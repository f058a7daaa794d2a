import json

import pytest
from click.testing import CliRunner

from metacover.cli import main
from metacover.report import CSV_HEADER, CensusRow, rows_from_csv, rows_from_json, rows_to_csv, rows_to_json


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, [str(a) for a in args])
    return _run


def test_count_text(run):
    res = run("count", "--g", 2, "--m", 3, "--n", 2)
    assert res.exit_code == 0
    assert "T=4\nN=15\nC=60\n" in res.output


def test_count_json(run):
    res = run("count", "--g", 2, "--m", 7, "--n", 3, "--format", "json", "--verify")
    data = json.loads(res.output)
    assert res.exit_code == 0
    assert data["counts"] == {"T": "16", "N_cyclic": "40", "C_total": "640"}
    assert data["verification"] == {"method": "formula+kernel+enumeration", "match": True, "oracle_value": "16"}


def test_count_csv(run):
    res = run("count", "--g", 2, "--m", 3, "--n", 2, "--format", "csv")
    assert res.output == "g,m,n,T,N_cyclic,C_total,verified\n2,3,2,4,15,60,skipped\n"


@pytest.mark.parametrize("args", [("--g", 2, "--m", 6, "--n", 4), ("--g", 1, "--m", 3, "--n", 2),
                                  ("--g", 2, "--m", 1, "--n", 2)])
def test_count_invalid(run, args):
    res = run("count", *args)
    assert res.exit_code == 2


def test_count_names_gcd(run):
    res = run("count", "--g", 2, "--m", 6, "--n", 4)
    assert "gcd(6, 4) = 2" in res.output


def test_census_rows(run):
    res = run("census", "--g", 2, "--m-max", 5, "--n-max", 5)
    assert res.exit_code == 0
    rows = {(r.m, r.n): r for r in rows_from_csv(res.output)}
    assert rows[(3, 2)].T == 4 and rows[(5, 2)].T == 6 and rows[(2, 3)].T == 0
    assert (2, 4) not in rows


def test_census_verify_json(run):
    res = run("census", "--g", 2, "--m-max", 4, "--n-max", 3, "--format", "json", "--verify")
    rows = rows_from_json(res.output)
    assert res.exit_code == 0
    assert rows and all(r.verified is True for r in rows)


def test_census_kernel_verified(run):
    res = run("census", "--g", 2, "--m-max", 3, "--n-max", 2, "--verify", "--budget", 10)
    assert rows_from_csv(res.output)[0].verified == "kernel-verified"


def test_census_empty_grid(run):
    assert run("census", "--g", 2, "--m-max", 1, "--n-max", 5).exit_code == 2


def test_census_unwritable(run, tmp_path):
    res = run("census", "--g", 2, "--m-max", 3, "--n-max", 3, "--out", tmp_path / "missing" / "x.csv")
    assert res.exit_code == 3


def test_census_writes_file(run, tmp_path):
    out = tmp_path / "census.csv"
    assert run("census", "--g", 2, "--m-max", 3, "--n-max", 3, "--out", out).exit_code == 0
    assert out.read_text().startswith(",".join(CSV_HEADER))


def test_verify_match(run):
    res = run("verify", "--g", 2, "--m", 7, "--n", 3)
    assert res.exit_code == 0
    assert res.output.startswith("MATCH 16")


def test_verify_kernel_only(run):
    res = run("verify", "--g", 2, "--m", 7, "--n", 3, "--budget", 100)
    assert res.exit_code == 0
    assert "enumeration skipped" in res.output and "kernel_directions" in res.output


def test_verify_mismatch_exit(run):
    res = run("verify", "--g", 2, "--m", 7, "--n", 3, "--corrupt", "enumeration")
    assert res.exit_code == 1
    assert res.output.startswith("MISMATCH")


def test_verify_integrity_exit(run):
    res = run("verify", "--g", 2, "--m", 7, "--n", 3, "--corrupt", "kernel")
    assert res.exit_code == 4


def test_verify_mixed_eigenvalue_note(run):
    res = run("verify", "--g", 2, "--m", 15, "--n", 2)
    assert res.exit_code == 1
    assert "note:" in res.output


def test_verify_json(run):
    res = run("verify", "--g", 2, "--m", 3, "--n", 2, "--format", "json")
    assert json.loads(res.output)["verification"]["match"] is True


def test_factor(run):
    res = run("factor", "--n", 3, "--p", 7, "--e", 2, "--format", "csv")
    assert res.exit_code == 0
    lifted = sorted(int(line.split(",")[1]) for line in res.output.splitlines()[1:])
    assert lifted == [18, 30]


def test_factor_text_and_json(run):
    res = run("factor", "--n", 3, "--p", 7, "--e", 2)
    assert "2 mod 7^1 -> 30 mod 7^2" in res.output
    data = json.loads(run("factor", "--n", 6, "--p", 13, "--format", "json").output)
    assert len(data["roots"]) == 5 and data["cofactor"] == ["1"]


def test_factor_empty(run):
    res = run("factor", "--n", 3, "--p", 5, "--format", "csv")
    assert res.exit_code == 0
    assert res.output == "root_mod_p,lifted,order,f_value\n"


@pytest.mark.parametrize("args", [("--n", 4, "--p", 2), ("--n", 3, "--p", 6), ("--n", 3, "--p", 7, "--e", 0)])
def test_factor_invalid(run, args):
    assert run("factor", *args).exit_code == 2


def test_symplectic(run):
    res = run("symplectic", "--g", 2, "--n", 3, "--delta", "0,0,1,0")
    assert res.exit_code == 0
    assert res.output.count("PASS") == 6 and "FAIL" not in res.output


def test_symplectic_json(run):
    data = json.loads(run("symplectic", "--g", 3, "--n", 8, "--delta", "2,4,6,3,0,0", "--format", "json").output)
    assert all(data["checks"].values())


@pytest.mark.parametrize("delta", ["2,4,0,2", "1,0,0", "a,b,c,d"])
def test_symplectic_invalid(run, delta):
    assert run("symplectic", "--g", 2, "--n", 6, "--delta", delta).exit_code == 2


def test_csv_json_roundtrip():
    rows = [CensusRow(2, 3, 2, 4, 15, 60, True), CensusRow(3, 7, 3, 10**30, 5, 7, "kernel-verified"),
            CensusRow(2, 2, 3, 0, 40, 0, False), CensusRow(2, 5, 2, 6, 15, 90)]
    assert rows_from_csv(rows_to_csv(rows)) == rows
    assert rows_from_json(rows_to_json(rows)) == rows
    assert "\r" not in rows_to_csv(rows)


def test_csv_header_checked():
    with pytest.raises(ValueError):
        rows_from_csv("a,b\n1,2\n")
