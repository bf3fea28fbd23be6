import csv
import io
import json
import os
import subprocess
import sys

import pytest

from crankparity import cli
from crankparity.partitions import CrankParityTable, build_table


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv(cli.CACHE_ENV, str(d))
    monkeypatch.chdir(tmp_path)
    return d


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "--max-n", "100", "--out", "t.txt")
    assert code == 0
    text = (tmp_path / "t.txt").read_text()
    assert text.startswith("crank-parity-table v1 max_n=100\n")
    assert CrankParityTable.loads(text) == build_table(100)
    assert build_table(100).delta_checksum() in out


def test_table_small_summary(capsys, cache):
    code, out, _ = run(capsys, "table", "--max-n", "4")
    assert code == 0
    assert "p=[1,1,2,3,5]" in out and "delta=[1,-1,2,-1,5]" in out
    assert (cache / "table-4.txt").exists()


def test_table_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "table", "--max-n", "4", "--out", str(tmp_path / "missing" / "t.txt"))
    assert code == 2 and "error" in err


def test_cache_flag_overrides_env(capsys, tmp_path, cache):
    other = tmp_path / "other"
    code, _, _ = run(capsys, "verify", "sign", "--from", "0", "--to", "20", "--cache-dir", str(other))
    assert code == 0
    assert (other / "table-20.txt").exists() and not cache.exists()


def test_cache_reuse(capsys, cache):
    run(capsys, "table", "--max-n", "300")
    run(capsys, "verify", "convexity", "--from", "39", "--to", "200")
    assert sorted(os.listdir(cache)) == [".lock", "table-300.txt"]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "logconcave", "--k", "0", "--from", "94", "--to", "2011")[0] == 0
    code, out, _ = run(capsys, "verify", "convexity", "--k", "0", "--from", "38", "--to", "38")
    assert code == 1 and "n=38" in out
    assert run(capsys, "verify", "sign", "--from", "0", "--to", "5000")[0] == 0


def test_verify_both_returns_worst(capsys):
    code, out, _ = run(capsys, "verify", "convexity", "--k", "both", "--from", "38", "--to", "60")
    assert code == 1
    assert "k=0" in out and "k=1" in out


def test_verify_clamps_k1_with_warning(capsys):
    code, out, err = run(capsys, "verify", "turan", "--k", "1", "--from", "0", "--to", "10", "--format", "json")
    assert "warning" in err
    assert json.loads(out)[0]["range"] == [1, 10]


def test_verify_other_checks(capsys):
    assert run(capsys, "verify", "dexcess", "--d", "1", "--from", "4", "--to", "500")[0] == 0
    assert run(capsys, "verify", "equidist", "--from", "4", "--to", "100")[0] == 0
    assert run(capsys, "verify", "ybounds", "--from", "2011", "--to", "2030")[0] == 0
    assert run(capsys, "verify", "mainterm", "--from", "3", "--to", "100")[0] == 0
    assert run(capsys, "verify", "equidist", "--from", "2", "--to", "10")[0] == 2


def test_certify(capsys):
    assert run(capsys, "certify", "turan", "--from", "2011", "--to", "2100", "--precision", "256")[0] == 0
    code, _, err = run(capsys, "certify", "logconcave", "--from", "100", "--to", "200")
    assert code == 2 and "mu" in err
    assert run(capsys, "certify", "envelope", "--from", "1178", "--to", "1400")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys, "verify", "convexity", "--from", "5")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "sign", "--from", "10", "--to", "5")[0] == 2
    assert run(capsys, "certify", "turan", "--from", "2011", "--to", "2020", "--precision", "32")[0] == 2
    assert run(capsys, "table", "--max-n", "-1")[0] == 2


def test_indeterminate_exit_code(capsys, monkeypatch):
    from crankparity import certify

    monkeypatch.setattr(certify, "_decide_at", lambda predicate, prec: None)
    assert run(capsys, "certify", "logconcave", "--from", "2011", "--to", "2015")[0] == 3


def test_locked_cache_fails_fast(capsys, cache):
    import fcntl

    cache.mkdir()
    with open(cache / ".lock", "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        code, _, err = run(capsys, "table", "--max-n", "10")
    assert code == 2 and "locked" in err


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--from", "3", "--to", "100")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == cli.REPORT_COLUMNS
    assert all(len(r) == len(cli.REPORT_COLUMNS) for r in rows)
    assert len(rows) == 99
    ratio = cli.REPORT_COLUMNS.index("e_beta_ratio")
    assert all(float(r[ratio]) <= 1 for r in rows[1:])
    assert "\r" not in out


def test_report_json_roundtrip(capsys):
    code, out, _ = run(capsys, "report", "--from", "1", "--to", "30", "--format", "json")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc, sort_keys=True, indent=1)) == doc
    assert [r["n"] for r in doc["rows"]] == [str(n) for n in range(1, 31)]
    assert {c["theorem"] for c in doc["certificates"]} >= {"SignAlternation", "Convexity"}


def test_report_text_and_out(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "--from", "3", "--to", "10", "--format", "text", "--out", "r.txt")
    assert code == 0 and out == ""
    text = (tmp_path / "r.txt").read_text()
    assert "n=3 " in text and "SignAlternation" in text


def test_report_mu_digits(capsys):
    _, out, _ = run(capsys, "report", "--from", "1", "--to", "1")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    import mpmath

    with mpmath.workdps(40):
        assert row["mu"] == mpmath.nstr(mpmath.pi * mpmath.sqrt(23) / 6, 20)


def test_module_entry_point(tmp_path):
    env = dict(os.environ, **{cli.CACHE_ENV: str(tmp_path / "c")})
    res = subprocess.run([sys.executable, "-m", "crankparity", "verify", "convexity", "--k", "1",
                          "--from", "37", "--to", "37"], capture_output=True, text=True, env=env)
    assert res.returncode == 1 and "n=37" in res.stdout
