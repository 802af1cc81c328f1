from __future__ import annotations

import csv
import io
import json
import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from jplab import cli
from jplab._parallel import parallel_iter, parallel_map, worker_count
from jplab.report import CsvSink, fmt_float, to_csv, to_json


def test_json_formatting():
    text = to_json({"a": 0.1, "b": math.nan, "c": [1, np.float64(2.5), np.int64(3)], "d": mpmath.mpf("1e500"), "e": True})
    assert text == '{"a": 0.10000000000000001, "b": null, "c": [1, 2.5, 3], "d": "1.0e+500", "e": true}\n'
    assert json.loads(text)["d"] == "1.0e+500"


def test_fmt_round_trips():
    for x in (1 / 3, 1e-300, 123456789.123456789, -2.5e17):
        assert float(fmt_float(x)) == x
    assert fmt_float(math.inf) is None


def test_csv_rfc4180():
    text = to_csv([{"a": 1, "b": "x,y"}, {"a": math.inf, "c": [1.0, 2.0]}])
    assert text.endswith("\r\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["a", "b", "c"], ["1", "x,y", ""], ["", "", "1;2"]]


def test_csv_sink_flushes():
    class Probe(io.StringIO):
        flushes = 0

        def flush(self):
            Probe.flushes += 1

    buf = Probe()
    sink = CsvSink(buf, ["x"])
    sink.write({"x": 1})
    sink.write({"x": 2})
    assert Probe.flushes == 3


def test_worker_count(monkeypatch):
    monkeypatch.setenv("JPL_WORKERS", "3")
    assert worker_count() == 3
    assert worker_count(2) == 2
    monkeypatch.delenv("JPL_WORKERS")
    assert worker_count() == 1


def test_parallel_helpers_keep_order():
    assert parallel_map(abs, [-3, 2, -1], workers=2) == [3, 2, 1]
    assert list(parallel_iter(abs, [-3, 2, -1], workers=2)) == [3, 2, 1]


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_char_list_csv(capsys):
    code, out, _ = run(["char", "list", "--bound", "8", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["discriminant"]) for r in rows] == [-3, -4, 5, -7, -8, 8]
    assert [int(r["parity"]) for r in rows] == [1, 1, 0, 1, 1, 0]


def test_xi_zeros_json(capsys):
    code, out, _ = run(["xi", "zeros", "--z-max", "30"], capsys)
    assert code == 0
    roots = [r["root"] for r in json.loads(out)["roots"]]
    assert len(roots) == 3
    assert roots == pytest.approx([14.134725, 21.022040, 25.010858], abs=1e-6)


def test_deterministic_bytes(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert cli.main(["jensen", "fn", "--n", "1", "--x-grid", "0:6:1.5", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_exit_codes(capsys, tmp_path):
    assert run(["xi", "eval", "--z", "1", "--bogus"], capsys)[0] == 2
    assert run(["xi", "eval", "--z", "500"], capsys)[0] == 2
    assert run(["char", "list", "--bound", "2"], capsys)[0] == 2
    code, _, err = run(["xi", "eval", "--z", "1", "--output", str(tmp_path / "missing" / "x.json")], capsys)
    assert code == 3 and "cannot open" in err


def test_phi_scan_streaming_csv(tmp_path):
    out = tmp_path / "scan.csv"
    assert cli.main(["phi", "scan", "--all-d", "12", "--t-max", "2", "--step", "0.05", "--format", "csv",
                     "--output", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [r["kernel"] for r in rows] == ["chi_-3", "chi_-4", "chi_5", "chi_-7", "chi_-8", "chi_8", "chi_-11", "chi_12"]
    assert all(float(r["evenness_residual"]) <= 1e-12 for r in rows)


def test_theta_check_and_phi(capsys):
    code, out, _ = run(["char", "theta-check", "--d", "-7"], capsys)
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run(["phi", "eval", "--t", "0,1"], capsys)
    vals = [r["value"] for r in json.loads(out)["results"]]
    assert vals == pytest.approx([1.7867876018684937763, 5.5112557625425350621e-07], rel=1e-13)


def test_asymp_commands(capsys):
    code, out, _ = run(["asymp", "limits", "--format", "csv"], capsys)
    assert code == 0 and out.count("\r\n") == 9
    code, out, _ = run(["asymp", "limits", "--bessel-alpha", "-0.5", "--ladder", "64,128,256"], capsys)
    assert code == 0 and "cosine_residual" in out
    for which in ("growth", "growth-normalized", "i-bound", "coefficient", "polynomial", "lemma"):
        assert run(["asymp", "bounds", "--which", which], capsys)[0] == 0
    assert run(["asymp", "bounds", "--which", "i-bound", "--alphas", "-0.9"], capsys)[0] == 1


def test_jensen_surrogate_small(capsys):
    code, out, _ = run(["jensen", "surrogate", "--x", "1", "--n", "1", "--N-ladder", "1,2,4,8"], capsys)
    payload = json.loads(out)
    assert payload["checks"]["split"] and payload["checks"]["I2_lower_bound"] and payload["checks"]["N0_exists"]
    assert code == (0 if payload["pass"] else 1)
    code, out, _ = run(["jensen", "surrogate", "--x", "1", "--n", "1", "--mode", "scaled", "--N-ladder", "64"], capsys)
    assert code == 0 and json.loads(out)["results"][0]["abs_diff"] < 1e-3


def test_verify_suite_subset(capsys):
    code, out, _ = run(["verify", "all", "--suite", "specfun", "--suite", "characters"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["pass"]
    assert set(payload["suites"]) == {"specfun", "characters"}
    for row in payload["checks"]:
        assert list(row) == ["suite", "check_id", "statement", "value", "contract", "pass"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "jplab", "char", "list", "--bound", "5", "--format", "csv"],
                         capture_output=True, text=True, env=os.environ.copy())
    assert out.returncode == 0 and out.stdout.splitlines()[1:] == ["-3,3,1", "-4,4,1", "5,5,0"]
