import csv
import io
import json
import subprocess
import sys

import pytest

from parking import __version__
from parking.cli import main
from parking.enumeration import count_pf


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


def test_count_envelope_is_byte_stable():
    code, out, _ = run("count", "--m", "4", "--n", "6")
    assert code == 0
    assert out == '{"command":"count","params":{"m":4,"n":6},"result":{"count":"1029"},"version":"%s"}\n' % __version__


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["count", "--m", "4", "--n", "5", "--prefix", "3,4"], "16"),
        (["count", "--u-vector", "2,5"], "16"),
        (["count", "--m", "2", "--n", "2", "--ipf"], "6"),
        (["count", "--m", "3", "--n", "6", "--gap", "2", "3"], "48"),
        (["count", "--m", "4", "--n", "6", "--contiguous", "2", "2"], "35"),
        (["count", "--m", "6", "--n", "8", "--method", "composition"], str(count_pf(6, 8))),
    ],
)
def test_count_variants(argv, expected):
    assert run_json(*argv)["result"]["count"] == expected


def test_big_counts_are_exact_strings():
    doc = run_json("count", "--m", "60", "--n", "80")
    assert doc["result"]["count"] == str(21 * 81**59)


def test_enumerate_csv():
    code, out, _ = run("enumerate", "--m", "2", "--n", "2")
    assert code == 0
    assert out == "pi1,pi2\n1,1\n1,2\n2,1\n"


def test_enumerate_budget_exit_code():
    code, out, err = run("enumerate", "--m", "8", "--n", "8", "--budget", "10")
    assert code == 3
    assert out == ""
    assert "budget" in err


def test_check_success_and_failure():
    doc = run_json("check", "--pf", "1,3", "--n", "4")
    assert doc["result"] == {"outcome": [1, 3], "parking_function": True, "unattempted": [2, 4]}
    code, out, err = run("check", "--pf", "2,2,2", "--n", "3")
    assert code == 2
    assert json.loads(out)["result"]["parking_function"] is False
    assert "car 3 cannot park" in err


def test_check_other_modes():
    a, b = "3,1,7,4,1,2,5,3,1", "3,7,9,8,4,9,8,8,9"
    doc = run_json("check", "--pf", a, "--n", "9", "--b", b)
    assert doc["result"] == {"conjugate_properties": True, "interval_parking_function": True}
    assert run_json("check", "--pf", "2,7,2,9,10,1", "--n", "10", "--multishuffle", "3,5,1,2")["result"]["multishuffle"]
    assert run("check", "--pf", "2,1", "--n", "2", "--u", "1,1")[0] == 2


def test_decompose_and_complete():
    doc = run_json("decompose", "--suffix", "2,6", "--l", "2", "--m", "4", "--n", "6")
    assert doc["result"]["u"] == [4, 5]
    assert run("decompose", "--suffix", "3,3,3", "--l", "1", "--m", "4", "--n", "4")[0] == 2
    doc = run_json("complete", "--prefix", "3,4", "--m", "4", "--n", "5")
    assert doc["result"] == {"completions": "16", "thresholds": [2, 5]}


def test_sample_is_reproducible_and_valid():
    a = run("sample", "--m", "3", "--n", "4", "--count", "50", "--seed", "1")
    b = run("sample", "--m", "3", "--n", "4", "--count", "50", "--seed", "1")
    assert a == b
    rows = list(csv.reader(io.StringIO(a[1])))
    assert rows[0] == ["pi1", "pi2", "pi3"] and len(rows) == 51
    doc = run_json("sample", "--m", "3", "--n", "4", "--count", "5", "--seed", "1", "--format", "json")
    assert doc["seed"] == 1 and len(doc["result"]["samples"]) == 5


def test_sample_statistics_and_env_threads(monkeypatch):
    argv = ["sample", "--m", "10", "--n", "20", "--count", "2000", "--stat", "pi1", "--stat", "k1", "--seed", "2"]
    monkeypatch.setenv("PARKING_THREADS", "2")
    code, out, _ = run(*argv)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["statistic"] for r in rows] == ["pi1", "k1"]
    assert {r["threads"] for r in rows} == {"2"}
    assert run(*argv, "--threads", "2") == (code, out, "")
    monkeypatch.setenv("PARKING_THREADS", "zero")
    assert run(*argv)[0] == 1


def test_sample_ipf_and_bad_stat():
    doc = run_json("sample", "--m", "3", "--n", "3", "--ipf", "--count", "4")
    assert len(doc["result"]["samples"]) == 4
    assert run("sample", "--m", "3", "--n", "3", "--stat", "k1")[0] == 2


def test_moments_csv():
    code, out, _ = run("moments", "--m", "10", "--n", "20", "--kind", "E_pi1")
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["exact_rational"] == "14242179688/1400846643"
    assert float(row["abs_err"]) == pytest.approx(abs(float(row["exact"]) - float(row["asymptotic"])))


def test_abel_accepts_negative_exponents():
    doc = run_json("abel", "--x", "1,2", "--p", "-1,0", "--n", "3")
    assert all(c["holds"] for c in doc["result"]["checks"])
    assert doc["result"]["value"] == "216"


def test_ipf_and_tree_roundtrip(tmp_path):
    a, b = "3,1,7,4,1,2,5,3,1", "3,7,9,8,4,9,8,8,9"
    doc = run_json("ipf", "--a", a, "--b", b)
    path = tmp_path / "tree.json"
    path.write_text(json.dumps(doc["result"]["tree"]))
    back = run_json("tree", "--decode", str(path), "--bipartite")
    assert back["result"]["ipf"] == {"a": [3, 1, 7, 4, 1, 2, 5, 3, 1], "b": [3, 7, 9, 8, 4, 9, 8, 8, 9]}
    assert back["result"]["bipartite"] == doc["result"]["bipartite"]
    code, dot, _ = run("tree", "--dot", str(path))
    assert code == 0 and dot.startswith("graph tree {") and '0 -- 2 [label="5"];' in dot
    assert run("ipf", "--a", "2,2", "--b", "2,2")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["count"],
        ["count", "--m", "x", "--n", "3"],
        ["check", "--pf", "1,a", "--n", "3"],
        ["count", "--m", "2", "--n", "3", "--prefix", "1", "--ipf"],
        ["tree", "--decode", "/nonexistent/tree.json"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err


def test_domain_errors():
    assert run("count", "--m", "3", "--n", "2")[0] == 2
    assert run("complete", "--prefix", "4,3", "--m", "3", "--n", "5")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "parking", "count", "--m", "2", "--n", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["count"] == "3"
