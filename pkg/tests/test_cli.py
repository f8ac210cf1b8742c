import csv
import io
import json
import subprocess
import sys

import pytest

from twosep import cli
from twosep.forests import ConsistencyError


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_pipeline_example():
    gen = subprocess.run(
        [sys.executable, "-m", "twosep", "gen", "--family", "straight", "--n", "7"],
        capture_output=True, text=True, check=True,
    )
    res = subprocess.run(
        [sys.executable, "-m", "twosep", "resistance", "-", "-u", "2", "-v", "4"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "81/144 = 0.5625"


def test_closed_form_example(capsys):
    code, out, _ = call(capsys, "closed-form", "--family", "sierpinski", "--query", "corner-resistance", "--n", "1")
    assert code == 0
    assert out.startswith("10/9")


def test_missing_file(capsys):
    code, out, err = call(capsys, "trees", "nosuchfile")
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_bad_edge_list(capsys, monkeypatch):
    code, _, err = call(capsys, "trees", "-", stdin="3 2\n1 2\n", monkeypatch=monkeypatch)
    assert code == 2 and "input error" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["trees"],
        ["trees", "--family", "straight"],
        ["frobnicate"],
        ["forests", "--family", "straight", "--n", "5"],
        ["closed-form", "--family", "straight", "--query", "corner-forests", "--n", "3"],
        ["bench", "--family", "straight", "--n-range", "9..4"],
        ["resistance", "--family", "straight", "--n", "5", "-u", "1", "-v", "9"],
        ["decompose", "--family", "straight", "--n", "5", "-u", "1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 1
    assert len(err.strip().splitlines()) == 1


def test_consistency_failure_exit_code(capsys, monkeypatch):
    def broken(*_):
        raise ConsistencyError("odd numerator")

    monkeypatch.setattr(cli.fam, "straight_forest_closed", broken)
    code, _, err = call(capsys, "closed-form", "--family", "straight", "--query", "forests", "--n", "7", "-u", "1", "-v", "7")
    assert code == 3 and "consistency" in err


def test_counts_text(capsys):
    assert call(capsys, "trees", "--family", "straight", "--n", "7")[1] == "144\n"
    assert call(capsys, "forests", "--family", "straight", "--n", "7", "-u", "1", "-v", "7")[1] == "224\n"
    assert call(capsys, "forests", "--family", "bent", "--n", "7", "--k", "3", "-u", "1", "-v", "7")[1] == "209\n"


def test_json_schema(capsys):
    doc = as_json(capsys, "trees", "--family", "sierpinski", "--n", "1")
    assert doc == {"op": "trees", "input": "sierpinski(n=1)", "method": "reduce", "result": {"integer": "54"}}
    doc = as_json(capsys, "resistance", "--family", "straight", "--n", "7", "-u", "1", "-v", "7")
    assert doc["result"] == {"numerator": "14", "denominator": "9", "decimal": "1.555555555556"}


def test_json_is_stable(capsys):
    argv = ("decompose", "--family", "bent", "--n", "9", "--k", "3", "-u", "1", "-v", "9", "--threshold", "4")
    _, first, _ = call(capsys, *argv, "--format", "json")
    _, second, _ = call(capsys, *argv, "--format", "json")
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ("trees", "--family", "sierpinski", "--n", "2"),
        ("forests", "--family", "bent", "--n", "10", "--k", "4", "-u", "2", "-v", "9"),
        ("resistance", "--family", "straight", "--n", "12", "-u", "3", "-v", "11"),
        ("resistance", "--family", "sierpinski", "--n", "2", "-u", "1", "-v", "2"),
    ],
)
def test_det_and_reduce_agree(capsys, argv):
    det = as_json(capsys, *argv, "--method", "det")
    red = as_json(capsys, *argv, "--method", "reduce")
    assert det["result"] == red["result"]


def test_methods_agree_on_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("5 7\n1 2 2\n2 3\n1 3\n3 4\n4 5\n3 5\n1 5\n")
    results = [
        as_json(capsys, "resistance", str(path), "-u", "2", "-v", "4", "--method", m)["result"]
        for m in ("det", "reduce", "enumerate")
    ]
    assert results[0] == results[1] == results[2]
    exact = int(results[0]["numerator"]) / int(results[0]["denominator"])
    pinv = float(as_json(capsys, "resistance", str(path), "-u", "2", "-v", "4", "--method", "pinv")["result"]["decimal"])
    assert abs(pinv - exact) <= 1e-9 * exact


def test_closed_form_method(capsys):
    for argv in [
        ("trees", "--family", "straight", "--n", "9"),
        ("forests", "--family", "bent", "--n", "9", "--k", "3", "-u", "1", "-v", "9"),
        ("resistance", "--family", "straight", "--n", "9", "-u", "2", "-v", "7"),
    ]:
        assert as_json(capsys, *argv, "--method", "closed-form")["result"] == as_json(capsys, *argv, "--method", "det")["result"]


@pytest.mark.parametrize(
    "argv, text",
    [
        (("--family", "straight", "--query", "trees", "--n", "7"), "144"),
        (("--family", "straight", "--query", "forests", "--n", "7", "-u", "2", "-v", "4"), "81"),
        (("--family", "straight", "--query", "forests-sum", "--n", "7", "-u", "1", "-v", "3"), "89"),
        (("--family", "straight", "--query", "resistance", "--n", "4", "-u", "1", "-v", "4"), "1/1 = 1"),
        (("--family", "bent", "--query", "forests", "--n", "7", "--k", "3", "-u", "1", "-v", "7"), "209"),
        (("--family", "bent", "--query", "end-resistance", "--n", "7", "--k", "3"), "209/144 = 1.451388888889"),
        (("--family", "sierpinski", "--query", "trees", "--n", "1"), "54"),
        (("--family", "sierpinski", "--query", "corner-resistance", "--n", "0"), "2/3 = 0.666666666667"),
    ],
)
def test_closed_form_queries(capsys, argv, text):
    code, out, _ = call(capsys, "closed-form", *argv)
    assert code == 0 and out.strip() == text


def test_gen_to_file(capsys, tmp_path):
    out = tmp_path / "s1.txt"
    assert call(capsys, "gen", "--family", "sierpinski", "--n", "1", "-o", str(out))[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "6 9"
    assert as_json(capsys, "trees", str(out))["result"] == {"integer": "54"}


def test_decompose(capsys):
    code, out, _ = call(capsys, "decompose", "--family", "straight", "--n", "7")
    assert code == 0
    assert out.splitlines()[0] == "cut vertices: none"
    assert "{3,4}" in out.splitlines()[1]
    doc = as_json(capsys, "decompose", "--family", "straight", "--n", "7", "-u", "1", "-v", "7", "--threshold", "4")
    assert doc["result"] == {"integer": "224"}
    assert [2, 3] in doc["separators"]
    assert doc["trace"]["rule"] == "separation_cross"


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--max-n", "4", "--random", "5")
    assert code == 0
    assert out.splitlines()[-1].endswith(", 0 failed")
    doc = as_json(capsys, "verify", "--max-n", "4", "--random", "5")
    assert doc["result"]["failed"] == 0 and doc["result"]["passed"] > 0


def test_bench_csv(capsys, tmp_path):
    path = tmp_path / "bench.csv"
    code, out, _ = call(capsys, "bench", "--family", "straight", "--n-range", "10..30", "--step", "10", "--csv", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert {r["method"] for r in rows} == {"det", "reduce"}
    assert {int(r["n"]) for r in rows} == {10, 20, 30}
    assert all(r["matches"] == "True" for r in rows)
    assert "seconds" in out.splitlines()[0]
