from __future__ import annotations

import functools
import os
from pathlib import Path

import pytest

from leibniz.harness import SUITES, run_harness

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("LEIBNIZ_UPDATE_GOLDEN") == "1"

report_for = functools.cache(run_harness)

EXPECTED_EXIT = {"tables": 1, "series": 0, "derivations": 0, "gradations": 0, "extensions": 0, "profiles": 0}


@pytest.mark.parametrize("suite", list(SUITES))
def test_suite_report_matches_golden(suite):
    report = report_for(suite)
    path = GOLDEN / f"harness_{suite}.txt"
    if UPDATE:
        path.write_text(report.text, encoding="utf-8")
    assert report.text == path.read_text(encoding="utf-8")
    assert report.exit_code == EXPECTED_EXIT[suite]


def test_report_is_deterministic():
    assert run_harness("derivations").text == run_harness("derivations").text


def test_tables_failures_are_the_known_table_defects():
    report = report_for("tables")
    failed = [c.claim for c in report.checks if not c.passed]
    assert [c.split()[0] for c in failed] == ["RM2l_1.R2"] * 3 + ["RM31_1"]
    assert "first failure: RM2l_1.R2 n=6" in report.text


def test_extensions_replicates_nonexistence():
    report = report_for("extensions")
    assert report.exit_code == 0
    first = report.checks[0]
    assert first.passed and "force a1 = 0" in first.claim


def test_profiles_lists_inconclusive_pairs():
    report = report_for("profiles")
    info = [c for c in report.checks if c.informational]
    assert info and all(c.line().startswith("INFO") for c in info)


@pytest.mark.parametrize("name", ["", "nope", "ALL"])
def test_bad_suite_is_usage_error(name):
    report = run_harness(name)
    assert report.exit_code == 2 and "unknown suite" in report.text


def test_all_runs_every_suite():
    report = report_for("all")
    assert report.exit_code == 1
    assert {c.suite for c in report.checks} == set(SUITES)
