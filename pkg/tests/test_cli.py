import json
import subprocess
import sys

import pytest

from hfquad import __version__
from hfquad.cli import CSV_FIELDS, format_report, main, read_report, run_census


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "--d", "-3", "--f", "2")
    assert code == 0 and "half-factorial: True" in out
    code, out, _ = run(capsys, "analyze", "--d", "-7", "--f", "2", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"]["conditions"]["ii"] is False and rep["version"] == __version__
    code, out, _ = run(capsys, "analyze", "--order", "d=5,f=1", "--json")
    assert json.loads(out)["verdict"]["overall"] is True


def test_usage_errors(capsys):
    assert run(capsys, "analyze", "--d", "4")[0] == 2
    assert run(capsys, "analyze")[0] == 2
    assert run(capsys, "census", "--d-range", "x")[0] == 2
    assert run(capsys, "census", "--f-range", "2:61")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_lengths(capsys):
    code, out, _ = run(capsys, "lengths", "--d", "-5", "--f", "1", "--x", "6+0*w", "--json")
    assert code == 0 and json.loads(out)["lengths"] == [2]
    code, out, _ = run(capsys, "lengths", "--d", "-5", "--x", "6", "--trace")
    assert "6+0*w = (2+0*w) * (3+0*w)" in out
    code, _, err = run(capsys, "lengths", "--d", "-7", "--f", "2", "--x", "0+1*w")
    assert code == 2 and "2 does not divide" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--d", "5", "--f", "4")
    assert code == 0 and "AGREE" in out and "theorem half-factorial=False" in out
    code, out, _ = run(capsys, "verify", "--d", "-5", "--f", "3", "--norm-bound", "1000", "--strict")
    assert code == 4 and "INCONCLUSIVE" in out
    code, out, _ = run(capsys, "verify", "--d", "-3", "--f", "2", "--norm-bound", "2000", "--json")
    assert code == 0 and json.loads(out)["status"] == "AGREE"


def test_conjecture_scan(capsys):
    code, out, _ = run(capsys, "conjecture-scan", "--d-range", "-6:6", "--f-max", "8", "--json")
    rep = json.loads(out)
    # squarefree d in [-6, 6] other than 1: -6 -5 -3 -2 -1 2 3 5 6
    assert code == 0 and rep["orders"] == 9 * 8 and isinstance(rep["violations"], list)


def test_census_roundtrip(tmp_path, capsys):
    for fmt in ("csv", "json"):
        path = tmp_path / f"c.{fmt}"
        code, _, err = run(capsys, "census", "--d-range", "-8:8", "--f-range", "1:6", "--format", fmt, "--out", str(path), "--oracle-bound", "300")
        assert code == 0
        summary = json.loads(err.splitlines()[0])
        meta, rows = read_report(path)
        assert meta["version"] == __version__ and meta["parameters"]["d_range"] == "-8:8"
        # 11 squarefree d; skipped: -8, -4, 0, 1, 4, 8
        assert summary["orders"] == len(rows) == 11 * 6
        assert summary["skipped_d"] == 6
        assert [(r.d, r.f) for r in rows] == sorted((r.d, r.f) for r in rows)
        again = read_report(format_report(meta, rows, meta["summary"], fmt))
        assert again[1] == rows


def test_census_parallel_matches_serial():
    a, _ = run_census(range(-10, 11), range(2, 7), threads=1)
    b, _ = run_census(range(-10, 11), range(2, 7), threads=2)
    assert a == b


def test_empty_census(tmp_path, capsys):
    path = tmp_path / "e.csv"
    code, _, _ = run(capsys, "census", "--d-range", "3:2", "--out", str(path))
    assert code == 0
    meta, rows = read_report(path)
    assert rows == [] and path.read_text().splitlines()[1] == ",".join(CSV_FIELDS)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hfquad", "analyze", "--d", "-3", "--f", "2", "--json"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["verdict"]["overall"] is True
