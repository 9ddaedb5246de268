"""Report records, JSON/CSV serialization, and figure output."""

import csv
import json
import os

import pytest

from rsclifford.report import (
    CheckRecord,
    VerificationReport,
    write_csv,
    write_report_files,
)


def sample_report(with_refinement=False):
    records = [
        CheckRecord(
            name="interior",
            suite="cauchy",
            error=3.2e-9,
            tolerance=1e-6,
            passed=True,
            runtime=1.25,
        ),
        CheckRecord(
            name="factor",
            suite="calibration",
            error=2e-10,
            tolerance=1e-6,
            passed=True,
            calibration_factor=1.0000000002,
            runtime=0.8,
        ),
        CheckRecord(name="note", suite="hodge", runtime=0.01),
    ]
    if with_refinement:
        records.append(
            CheckRecord(
                name="exterior-decay",
                suite="cauchy",
                error=8e-6,
                tolerance=1e-3,
                passed=True,
                runtime=4.0,
                details={
                    "refinement_steps": [10, 14, 18],
                    "refinement_errors": [6e-3, 5e-4, 8e-6],
                },
            )
        )
    return VerificationReport(
        suites=["cauchy"],
        config={"m": 3, "k": 1},
        records=records,
    )


def test_record_line_formats():
    rep = sample_report()
    assert rep.records[0].line() == "[PASS]  cauchy/interior  error=3.200e-09  tol=1.0e-06  (1.25s)"
    assert "factor=1.000000000" in rep.records[1].line()
    assert rep.records[2].line().startswith("[INFO]  hodge/note")
    fail = CheckRecord(name="x", suite="s", error=1.0, tolerance=0.1, passed=False)
    assert fail.line().startswith("[FAIL]")


def test_summary_counts_info_separately():
    rep = sample_report()
    s = rep.summary()
    assert s == {
        "checks": 3,
        "asserted": 2,
        "passed": 2,
        "failed": 0,
        "all_passed": True,
    }
    rep.records[0].passed = False
    assert rep.summary()["failed"] == 1
    assert not rep.all_passed


def test_info_records_do_not_fail_report():
    rep = VerificationReport(suites=[], config={}, records=[CheckRecord(name="n", suite="s")])
    assert rep.all_passed


def test_as_dict_schema():
    rep = sample_report()
    d = rep.as_dict()
    assert d["schema"] == "report_v1"
    assert d["suites"] == ["cauchy"]
    assert d["config"] == {"m": 3, "k": 1}
    assert d["created"]
    assert len(d["checks"]) == 3
    first = d["checks"][0]
    assert first["name"] == "interior"
    assert "calibration_factor" not in first
    assert d["checks"][1]["calibration_factor"] == 1.0000000002


def test_to_json_round_trips():
    rep = sample_report()
    text = rep.to_json()
    assert text.endswith("}\n")
    back = json.loads(text)
    assert back["summary"]["asserted"] == 2


def test_csv_columns(tmp_path):
    rep = sample_report()
    path = str(tmp_path / "out.csv")
    write_csv(rep, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["suite", "name", "error", "tolerance", "passed", "runtime"]
    assert rows[1][0] == "cauchy"
    assert float(rows[1][2]) == 3.2e-9
    assert rows[3][2] == ""
    assert rows[3][4] == ""


def test_write_report_files_basic(tmp_path):
    rep = sample_report()
    json_path = str(tmp_path / "report.json")
    written = write_report_files(rep, json_path)
    assert written[0] == json_path
    assert written[1].endswith("report.csv")
    assert any(p.endswith("report_margins.png") for p in written)
    assert not any(p.endswith("report_refinement.png") for p in written)
    for p in written:
        assert os.path.exists(p)
        assert os.path.getsize(p) > 0


def test_write_report_files_refinement_figure(tmp_path):
    rep = sample_report(with_refinement=True)
    json_path = str(tmp_path / "report.json")
    written = write_report_files(rep, json_path)
    assert any(p.endswith("report_refinement.png") for p in written)


def test_write_report_files_without_json_suffix(tmp_path):
    rep = sample_report()
    base = str(tmp_path / "verify")
    written = write_report_files(rep, base)
    assert written[0] == base
    assert str(tmp_path / "verify.csv") in written
