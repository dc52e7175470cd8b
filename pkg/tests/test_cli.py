import csv
import io
import json
import os
import subprocess
import sys

import pytest


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    proc = subprocess.run([sys.executable, "-m", "affine_sl2", *args], capture_output=True, text=True,
                          env=full_env, timeout=600)
    return proc.returncode, proc.stdout, proc.stderr


def test_fusion():
    assert run("fusion", "--p", "1", "--q", "1", "--r", "0", "--level", "2")[:2] == (0, "1\n")
    assert run("fusion", "--p", "1", "--q", "2", "--r", "0", "--level", "2")[:2] == (0, "0\n")
    code, out, _ = run("fusion", "--p", "2", "--q", "2", "--r", "0", "--level", "1")
    assert (code, out) == (2, "indeterminate\n")


def test_radical_rows():
    code, out, _ = run("radical", "--n", "0", "--level", "1", "--grade", "2", "--format", "json-lines")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["corank"] for r in rows] == [0, 0, 5]
    assert set(rows[0]) == {"grade", "weight", "dim", "rank", "corank"}


def test_gram_csv():
    code, out, _ = run("gram", "--n", "0", "--level", "1", "--grade", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    top = [r for r in rows if r["grade"] == "2" and r["weight"] == "4"]
    assert top == [{"grade": "2", "weight": "4", "dim": "1", "rank": "0", "corank": "1"}]


def test_character_matches():
    code, out, _ = run("character", "--n", "1", "--level", "2", "--grade", "3", "--format", "json-lines")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["match"] for r in rows)
    assert [r["euler_dim"] for r in rows] == [2, 6, 12, 26]


def test_resolve_table():
    code, out, _ = run("resolve", "--n", "0", "--level", "1", "--jmax", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split() == ["j", "weight", "shift"]
    assert [line.split() for line in lines[1:]] == [["0", "0", "0"], ["1", "4", "2"], ["2", "6", "4"],
                                                    ["3", "10", "10"]]


def test_counterexample_exit_code():
    code, out, err = run("intertwine", "build", "--p", "2", "--q", "2", "--r", "0", "--level", "1",
                         "--grade", "3", "--override-conditions")
    assert code == 2
    assert "inconsistent recursion system" in out and "inconsistent recursion system" in err


def test_hypothesis_failure_exit_code():
    code, _, err = run("intertwine", "build", "--p", "2", "--q", "2", "--r", "0", "--level", "1",
                       "--grade", "3")
    assert code == 2 and "hypotheses fail" in err


def test_intertwine_verify_and_descend():
    code, out, _ = run("intertwine", "verify", "--p", "1", "--q", "1", "--r", "2", "--level", "2",
                       "--grade", "2", "--format", "json-lines", "--seed", "7")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert all(r.get("failures", 0) == 0 for r in rows)
    assert {r["check"] for r in rows} >= {"component commutators", "commutator formula", "iterate formula",
                                          "evaluation order", "permuted rebuild", "table checksum"}
    code, out, _ = run("intertwine", "descend", "--p", "1", "--q", "0", "--r", "1", "--level", "2",
                       "--grade", "3", "--format", "json-lines")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r.get("failures", 0) == 0 for r in rows)


def test_output_is_deterministic():
    args = ("intertwine", "build", "--p", "1", "--q", "1", "--r", "2", "--level", "2", "--grade", "2",
            "--format", "json-lines")
    first, second = run(*args), run(*args)
    assert first[0] == 0 and first[:2] == second[:2]


@pytest.mark.parametrize("args", [
    ("bogus",),
    ("fusion", "--p", "x"),
    ("resolve", "--n", "3", "--level", "1"),
    ("radical", "--n", "0", "--level", "1"),
    ("radical", "--n", "-1", "--level", "1", "--grade", "1"),
    ("intertwine", "explode", "--p", "1"),
    ("radical", "--n", "0", "--level", "1", "--grade", "1", "--format", "xml"),
])
def test_usage_errors(args):
    assert run(*args)[0] == 3


def test_resource_cap_exit_code():
    code, _, err = run("radical", "--n", "0", "--level", "1", "--grade", "3", env={"AFFINE_SL2_MAX_BASIS": "10"})
    assert code == 4 and "cap" in err


def test_in_process_entry_point():
    from affine_sl2.cli import run as cli_run
    buf = io.StringIO()
    assert cli_run(["fusion", "--p", "1", "--q", "1", "--r", "2", "--level", "2"], out=buf) == 0
    assert buf.getvalue() == "1\n"
