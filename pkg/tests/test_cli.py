from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from leibniz.catalog import make
from leibniz.cli import main
from leibniz.harness import M11_NONEXISTENCE_SCRIPT
from leibniz.serialization import parse, serialize

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("LEIBNIZ_UPDATE_GOLDEN") == "1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def golden(name: str, text: str) -> None:
    path = GOLDEN / name
    if UPDATE:
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


@pytest.fixture
def m10_file(tmp_path):
    path = tmp_path / "m10.json"
    path.write_text(serialize(make("M1", 7, {"delta": 0})), encoding="utf-8")
    return path


def test_catalog_list_golden(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    golden("cli_catalog_list.txt", out)


def test_catalog_build_to_file(tmp_path, capsys):
    path = tmp_path / "m4.json"
    code, out, _ = run(capsys, "catalog", "build", "M4", "--n", "6", "-o", str(path))
    assert code == 0 and out == ""
    A = parse(path.read_text(encoding="utf-8"))
    assert A == make("M4", 6) and len(json.loads(path.read_text())["products"]) == 4


def test_catalog_build_with_params(capsys):
    code, out, _ = run(capsys, "catalog", "build", "RM10_1.R7", "--n", "7", "--param", "alpha=1/2")
    assert code == 0 and parse(out) == make("RM10_1.R7", 7, {"alpha": "1/2"})


@pytest.mark.parametrize(
    "argv",
    [
        ("catalog", "build", "M1", "--n", "7"),
        ("catalog", "build", "M3", "--n", "7", "--param", "alpha=1"),
        ("catalog", "build", "M1", "--n", "7", "--param", "delta"),
        ("catalog", "build"),
        ("verify",),
        ("verify", "/nonexistent/file.json"),
        ("frobnicate",),
        ("harness", ""),
        ("grade", "--family", "M4"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_verify_pass_and_witness(capsys, m10_file):
    code, out, _ = run(capsys, "verify", str(m10_file))
    assert code == 0 and out == "Leibniz identity holds (dim 7, non-Lie)\n"
    code, out, _ = run(capsys, "verify", "--family", "RM31_1", "--n", "6")
    assert code == 1 and out == "Leibniz identity fails: L(x, e1, e4) = (-6)*e5\n"


def test_verify_reads_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize(make("M4", 6))))
    code, out, _ = run(capsys, "verify", "-")
    assert code == 0


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "products": [\n}', encoding="utf-8")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "line 3" in err


def test_series(capsys, m10_file):
    code, out, _ = run(capsys, "series", str(m10_file))
    assert code == 0
    golden("cli_series_m10.txt", out)


def test_der_pattern(capsys, m10_file):
    code, out, _ = run(capsys, "der", str(m10_file), "--pattern", "M1")
    assert code == 0 and out.splitlines() == ["dim Der = 10", "Pass: Der has dimension 10, equal to the M1 form"]


def test_der_mismatch_exit_1(capsys):
    code, out, _ = run(capsys, "der", "--family", "M2", "--n", "7", "--param", "lambda=1", "--pattern", "M1")
    assert code == 1 and out.splitlines()[1].startswith("Mismatch")


def test_grade(capsys):
    code, out, _ = run(capsys, "grade", "--family", "M3", "--n", "6", "--param", "alpha=1", "--max-weight", "12")
    assert code == 0
    assert out.splitlines() == ["weights: e1->1, e2->3, e3->4, e4->5, e5->6, e6->2", "length: 6"]
    code, out, _ = run(capsys, "grade", "--family", "M1", "--n", "7", "--param", "delta=0", "--weights", "1,1,1,1,1,1,1")
    assert code == 1 and out == "Invalid(i=2, j=1, k=3)\n"


def test_profile_pair(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(serialize(make("M3", 6, {"alpha": 1})), encoding="utf-8")
    b.write_text(serialize(make("M4", 6)), encoding="utf-8")
    code, out, _ = run(capsys, "profile", str(a), str(b))
    assert code == 0 and out.splitlines()[-1] == "NonIsomorphic(ann_r_dim: 2 vs 4)"


def test_extend_script(capsys, tmp_path):
    script = tmp_path / "m11.txt"
    script.write_text(M11_NONEXISTENCE_SCRIPT, encoding="utf-8")
    code, out, _ = run(capsys, "extend", str(script))
    assert code == 0
    assert out == (GOLDEN / "m11_nonexistence.txt").read_text(encoding="utf-8")
    script.write_text("build M1 n=7 delta=0\nexpect contradiction\n", encoding="utf-8")
    code, _, err = run(capsys, "extend", str(script))
    assert code == 1 and "expected a contradiction" in err


def test_harness_verb(capsys, tmp_path):
    code, out, _ = run(capsys, "harness", "gradations")
    assert code == 0
    assert out == (GOLDEN / "harness_gradations.txt").read_text(encoding="utf-8")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "leibniz", "harness", "derivations"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "harness_derivations.txt").read_text(encoding="utf-8")
