import csv
import io
import json
import re
import subprocess
import sys

import pytest

from qverify.catalog.registry import POLYNOMIAL, Family, ParamSpec
from qverify.cli import RunConfig, UsageError, cmd_verify_all, main
from qverify.errors import NonIntegerExponent
from qverify.qpoly import ONE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _strip_elapsed(text: str) -> str:
    return re.sub(r'"elapsed_ms": [0-9.e+-]+', '"elapsed_ms": 0', text)


def test_verify_example(capsys):
    code, out, err = run(capsys, "verify", "--family", "FQ", "--v", "2..3", "--i", "1..v",
                         "--L", "0..8", "--jobs", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 9 * 5 and all("Equal" in ln for ln in lines)
    assert "45 checks, 45 passed" in err


def test_unknown_family_and_bad_ranges(capsys):
    assert run(capsys, "verify", "--family", "NOPE")[0] == 2
    assert run(capsys, "verify", "--family", "FQ", "--x", "1")[0] == 2
    assert run(capsys, "verify", "--family", "FQ", "--v", "1..2", "--i", "1", "--L", "0")[0] == 2
    assert run(capsys, "verify", "--family", "FQ", "--v", "2..x*")[0] == 2
    assert run(capsys, "verify", "--family", "FQ", "--v")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--family", "FQ", "--jobs", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_verify_series_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "M20-7", "--truncate", "60", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1
    assert rows[0]["status"] == "Equal" and rows[0]["truncation"] == 60
    assert set(rows[0]) == {"family", "params", "status", "first_mismatch", "lhs_coeff",
                            "rhs_coeff", "truncation", "elapsed_ms", "detail"}


def test_json_is_byte_stable(capsys):
    argv = ["verify", "--family", "T11", "--v", "2..3", "--D", "0..v-1", "--L", "0..4", "--json"]
    first = run(capsys, *argv, "--jobs", "1")[1]
    second = run(capsys, *argv, "--jobs", "2")[1]
    assert _strip_elapsed(first) == _strip_elapsed(second)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "verify", "--family", "S3-C", "--L", "0..3", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["params"] for r in rows] == ["L=0", "L=1", "L=2", "L=3"]


def test_mismatch_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--family", "B5-L51", "--alpha", "1", "--beta", "1",
                       "--j", "0", "--m1", "2", "--m2", "2", "--M", "1")
    assert code == 1 and "Mismatch" in out


def test_constraint_filters_tuples(capsys):
    code, out, _ = run(capsys, "verify", "--family", "B5-L51c", "--alpha", "-1..1",
                       "--beta", "-1..1", "--j", "0", "--m1", "2", "--m2", "2", "--M", "2",
                       "--json")
    rows = json.loads(out)
    assert code == 0 and rows
    assert all(min(r["params"]["alpha"], r["params"]["beta"]) <= 0 for r in rows)


def _double(fn):
    return Family("DOUBLE", POLYNOMIAL, "test", (ParamSpec("L", "0"),), fn, lambda p: ONE,
                  smoke={"L": "0..1"})


def test_verify_all_with_test_doubles(capsys):
    cfg = RunConfig(fmt="json")
    assert cmd_verify_all(cfg, families=[]) == 0
    assert json.loads(capsys.readouterr().out) == []
    assert cmd_verify_all(cfg, families=[_double(lambda p: ONE)]) == 0
    capsys.readouterr()

    def boom(p):
        raise NonIntegerExponent("half-integral exponent")

    assert cmd_verify_all(cfg, families=[_double(boom)]) == 3
    rows = json.loads(capsys.readouterr().out)
    assert {r["status"] for r in rows} == {"Error"}


def test_run_config_checks():
    with pytest.raises(UsageError):
        RunConfig(truncation=0)
    with pytest.raises(UsageError):
        RunConfig(jobs=0)
    with pytest.raises(UsageError):
        RunConfig(level="huge")


def test_scan_empty_and_small(capsys):
    code, out, _ = run(capsys, "scan", "--K", "0..0")
    assert code == 0 and "0 cells checked" in out
    code, out, _ = run(capsys, "scan", "--K", "1..2", "--N", "0..3", "--M", "0..3", "--json")
    report = json.loads(out)
    assert code == 0 and report["checked"] > 0 and report["violations"] == []
    assert run(capsys, "scan", "--K", "-1..2")[0] == 2
    assert run(capsys, "scan", "--K", "1..v")[0] == 2


def test_scan_resume_skips_completed(capsys, tmp_path):
    ck = tmp_path / "scan.txt"
    argv = ["scan", "--K", "1..3", "--N", "0..3", "--M", "0..3", "--json", "--jobs", "1"]
    code, out, _ = run(capsys, *argv, "--resume", str(ck))
    first = json.loads(out)
    lines = ck.read_text().splitlines()
    assert code == 0 and len(lines) == first["checked"]
    assert all(len(ln.split()) == 6 for ln in lines)
    # drop the tail, resume, and only the missing cells are recomputed
    ck.write_text("\n".join(lines[:50]) + "\n")
    code, out, _ = run(capsys, *argv, "--resume", str(ck))
    second = json.loads(out)
    assert (second["resumed"], second["checked"]) == (50, first["checked"] - 50)
    assert len(ck.read_text().splitlines()) == first["checked"]


def test_scan_reports_recorded_violations(capsys, tmp_path):
    ck = tmp_path / "scan.txt"
    ck.write_text("1 0 0 0 1 NegativeCoefficient\n")
    code, out, _ = run(capsys, "scan", "--K", "1..1", "--N", "0..0", "--M", "0..0",
                       "--resume", str(ck))
    assert code == 1 and "VIOLATION G(N=0, M=0, alpha=0, beta=1, K=1)" in out


def test_scan_boundary_report(capsys):
    code, out, _ = run(capsys, "scan", "--K", "2..2", "--N", "0..2", "--M", "0..2",
                       "--boundary", "--json")
    report = json.loads(out)
    assert code == 0 and report["k2_boundary"]


def test_series(capsys):
    code, out, _ = run(capsys, "series", "1/(1-q)", "--truncate", "3")
    assert code == 0 and out.splitlines() == ["0 1", "1 1", "2 1", "3 1"]
    code, out, _ = run(capsys, "series", "P(q;q;inf)", "--truncate", "5", "--json")
    assert json.loads(out)["coefficients"] == [1, -1, -1, 0, 0, 1]
    code, _, err = run(capsys, "series", "P(q;q")
    assert code == 2 and "position 6" in err
    assert run(capsys, "series", "q^-1")[0] == 3


def test_families(capsys):
    code, out, _ = run(capsys, "families", "--json")
    meta = {m["id"]: m for m in json.loads(out)}
    assert code == 0
    assert meta["FQ"]["equation"] == "(1.2)" and meta["M20-5"]["products"] == [20, 5, 15]
    code, out, _ = run(capsys, "families")
    assert code == 0 and out.startswith("FQ ")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qverify", "verify", "--family", "NOPE"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
