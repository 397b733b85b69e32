import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from runspectra.cli import main
from runspectra.closedform import r_closed
from runspectra.stochastic import splitmix64


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_table_plain():
    code, text = run("table", "4")
    assert code == 0
    lines = text.splitlines()
    assert [int(line.split()[1]) for line in lines[2:6]] == [12, 5, 2, 1]
    assert lines[-1] == "t(n) = 20"


def test_table_one():
    code, text = run("table", "1")
    assert code == 0
    assert text.splitlines()[-2].split() == ["1", "1"]
    assert text.endswith("t(n) = 1\n")


def test_table_json_big_integers():
    code, text = run("table", "1000", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["schema"] == "runspectrum/1"
    row = doc["rows"][16]
    assert row["i"] == 17 and row["r"] == str(r_closed(1000, 17))
    assert isinstance(doc["total"], str)


def test_table_csv():
    code, text = run("table", "3", "--format", "csv", "--oracle")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["schema", "i", "r_n(i)"]
    assert rows[1:] == [
        ["runspectrum/1", "1", "5"],
        ["runspectrum/1", "2", "2"],
        ["runspectrum/1", "3", "1"],
        ["runspectrum/1", "total", "8"],
    ]


def test_table_per_string():
    code, text = run("table", "3", "--per-string")
    assert code == 0
    assert " 1 |0 1 1 0 1 2 0 0 | 5" in text
    code, text = run("table", "2", "--per-string", "--format", "json")
    doc = json.loads(text)
    assert [r["spectrum"] for r in doc["per_string"]] == [["0", "0"], ["1", "0"], ["1", "0"], ["0", "1"]]


@pytest.mark.parametrize("argv", [("table", "0"), ("table", "17", "--per-string"), ("table", "64", "--oracle")])
def test_table_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_verify():
    code, text = run("verify", "4")
    assert code == 0
    assert "n=4: 12 5 2 1 OK" in text


def test_verify_json():
    code, text = run("verify", "6", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["ok"] is True
    assert {c["check"] for c in doc["checks"]} >= {"oracle", "routes", "bijection", "oeis"}


def test_verify_below_precondition():
    assert run("verify", "1")[0] == 2


def test_verify_mismatch_exit_code(monkeypatch):
    import runspectra.closedform as cf

    original = cf.r_closed
    monkeypatch.setattr(cf, "r_closed", lambda n, i: original(n, i) + (n == 3 and i == 2))
    code, text = run("verify", "5")
    assert code == 1
    assert "MISMATCH n=3 i=2" in text


def test_bijection_listing():
    code, text = run("bijection", "4", "2")
    assert code == 0
    rows = [line for line in text.splitlines() if "pos=" in line]
    assert len(rows) == 5
    assert any(line.endswith("1100 pos=1") for line in rows)
    assert any(line.endswith("1011 pos=3") for line in rows)

    code, text = run("bijection", "4", "4")
    rows = [line for line in text.splitlines() if "pos=" in line]
    assert len(rows) == 1 and rows[0].endswith("1111 pos=1")

    code, text = run("bijection", "4", "1", "--format", "json")
    doc = json.loads(text)
    assert len(doc["rows"]) == 12
    assert [r["p"] for r in doc["rows"]] == sorted(r["p"] for r in doc["rows"])


@pytest.mark.parametrize("argv", [("bijection", "13", "1"), ("bijection", "4", "5"), ("bijection", "4", "0")])
def test_bijection_range(argv):
    assert run(*argv)[0] == 2


def test_sample():
    code, text = run("sample", "20", "--i", "3", "--samples", "1000000", "--seed", "42", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["exact_mean"] == "5/8"
    assert doc["rel_error"] < 0.01

    code, text = run("sample", "3", "--samples", "8", "--seed", "1", "--format", "json")
    assert 0 <= json.loads(text)["empirical_mean"] <= 3

    code, text = run("sample", "4", "--samples", "100000", "--seed", "9")
    assert "5/4" in text


def test_sample_deterministic():
    argv = ("sample", "10", "--samples", "300000", "--seed", "77")
    assert run(*argv, "--threads", "1") == run(*argv, "--threads", "4")


def exit_code(*argv):
    try:
        return run(*argv)[0]
    except SystemExit as exc:
        return exc.code


@pytest.mark.parametrize("argv", [("sample", "4", "--samples", "0"), ("sample", "1048577", "--samples", "1"),
                                  ("sample", "4", "--seed", "-3")])
def test_sample_errors(argv):
    assert exit_code(*argv) == 2


def test_analyze_empty(tmp_path):
    path = tmp_path / "empty.bin"
    path.write_bytes(b"")
    code, text = run("analyze", str(path))
    assert code == 0
    assert text == "bits=0 runs=0\n"


def test_analyze_ff(tmp_path):
    path = tmp_path / "ff.bin"
    path.write_bytes(b"\xff")
    code, text = run("analyze", str(path), "--format", "json")
    doc = json.loads(text)
    assert doc["rows"] == [{"i": 8, "count": "1", "observed_fraction": 1.0, "reference_fraction": "1/256"}]


def test_analyze_random_megabyte(tmp_path):
    path = tmp_path / "random.bin"
    path.write_bytes(splitmix64(2024, np.arange(1 << 17, dtype=np.uint64)).tobytes())
    code, text = run("analyze", str(path), "--format", "json")
    doc = json.loads(text)
    assert doc["bits"] == str(8 << 20)
    two = next(r for r in doc["rows"] if r["i"] == 2)
    assert abs(two["observed_fraction"] - 0.25) <= 0.01


def test_analyze_missing_file(tmp_path):
    assert run("analyze", str(tmp_path / "nope"))[0] == 3


def test_analyze_stdin_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "runspectra", "analyze", "-", "--bit-order", "lsb", "--format", "csv"],
        input=b"\x03", capture_output=True, check=True,
    )
    rows = list(csv.reader(io.StringIO(proc.stdout.decode())))
    assert rows[0] == ["schema", "i", "count", "observed_fraction", "reference_fraction"]
    assert rows[1][:3] == ["runspectrum/1", "2", "1"]


def test_oeis():
    code, text = run("oeis", "--terms", "5")
    assert code == 0
    assert "A045623: 1, 2, 5, 12, 28" in text
    assert "A001792: 1, 3, 8, 20, 48" in text
    doc = json.loads(run("oeis", "--format", "json", "--n-max", "32")[1])
    assert doc["ok"] and doc["terms"]["A001792"][3] == "20"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["table"])
    assert exc.value.code == 2
