"""Verification report records, serialization, and figure rendering.

A report is a flat list of check records under a versioned JSON schema.
Writing a report to a path also drops a CSV error table and PNG figures
next to it, so a CI artifact directory is self-contained.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMA = "report_v1"


@dataclass
class CheckRecord:
    """One executed check: what ran, what it measured, how it compares."""

    name: str
    suite: str
    parameters: dict = field(default_factory=dict)
    error: float | None = None
    tolerance: float | None = None
    passed: bool | None = None
    runtime: float = 0.0
    calibration_factor: float | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "suite": self.suite,
            "parameters": self.parameters,
            "error": self.error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "runtime": round(self.runtime, 6),
        }
        if self.calibration_factor is not None:
            out["calibration_factor"] = self.calibration_factor
        if self.details:
            out["details"] = self.details
        return out

    def line(self) -> str:
        mark = {True: "PASS", False: "FAIL", None: "INFO"}[self.passed]
        bits = [f"[{mark}]", f"{self.suite}/{self.name}"]
        if self.error is not None:
            bits.append(f"error={self.error:.3e}")
        if self.tolerance is not None:
            bits.append(f"tol={self.tolerance:.1e}")
        if self.calibration_factor is not None:
            bits.append(f"factor={self.calibration_factor:.9f}")
        bits.append(f"({self.runtime:.2f}s)")
        return "  ".join(bits)


@dataclass
class VerificationReport:
    """All records from one run plus the configuration that produced them."""

    suites: list[str]
    config: dict
    records: list[CheckRecord] = field(default_factory=list)
    created: str = ""

    def __post_init__(self):
        if not self.created:
            self.created = time.strftime("%Y-%m-%dT%H:%M:%S%z")

    @property
    def all_passed(self) -> bool:
        return all(r.passed is not False for r in self.records)

    def summary(self) -> dict:
        asserted = [r for r in self.records if r.passed is not None]
        return {
            "checks": len(self.records),
            "asserted": len(asserted),
            "passed": sum(1 for r in asserted if r.passed),
            "failed": sum(1 for r in asserted if not r.passed),
            "all_passed": self.all_passed,
        }

    def as_dict(self) -> dict:
        from . import __version__

        return {
            "schema": SCHEMA,
            "version": __version__,
            "created": self.created,
            "suites": self.suites,
            "config": self.config,
            "summary": self.summary(),
            "checks": [r.as_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def write_csv(report: VerificationReport, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "name", "error", "tolerance", "passed", "runtime"])
        for r in report.records:
            writer.writerow(
                [
                    r.suite,
                    r.name,
                    "" if r.error is None else repr(r.error),
                    "" if r.tolerance is None else repr(r.tolerance),
                    "" if r.passed is None else str(r.passed).lower(),
                    f"{r.runtime:.6f}",
                ]
            )


_FIG_META = {"Software": "rsclifford"}


def _error_figure(report: VerificationReport, path: str) -> None:
    rows = [r for r in report.records if r.error is not None and r.tolerance]
    if not rows:
        return
    labels = [f"{r.suite}/{r.name}" for r in rows]
    floor = 1e-18
    margins = [math.log10(max(r.error, floor) / r.tolerance) for r in rows]
    colors = ["#2a7e43" if r.passed else "#b03a2e" for r in rows]
    fig, ax = plt.subplots(figsize=(8, 0.4 * len(rows) + 1.6))
    ax.barh(range(len(rows)), margins, color=colors)
    ax.axvline(0.0, color="black", linewidth=1)
    ax.set_yticks(range(len(rows)), labels, fontsize=7)
    ax.set_xlabel("log10(error / tolerance)")
    ax.set_title("check margins (left of 0 passes)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_FIG_META)
    plt.close(fig)


def _convergence_figure(report: VerificationReport, path: str) -> None:
    curves = []
    for r in report.records:
        steps = r.details.get("refinement_steps")
        errs = r.details.get("refinement_errors")
        if steps and errs:
            curves.append((f"{r.suite}/{r.name}", steps, errs))
    if not curves:
        return
    fig, ax = plt.subplots(figsize=(7, 5))
    floor = 1e-18
    for label, steps, errs in curves:
        ax.plot(steps, [max(e, floor) for e in errs], marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("refinement parameter")
    ax.set_ylabel("error")
    ax.set_title("refinement behaviour")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_FIG_META)
    plt.close(fig)


def write_report_files(report: VerificationReport, json_path: str) -> list[str]:
    """Write the JSON report plus CSV and figures next to it.

    Returns the list of paths written.
    """
    stem = json_path[:-5] if json_path.endswith(".json") else json_path
    written = []
    with open(json_path, "w") as fh:
        fh.write(report.to_json())
    written.append(json_path)
    csv_path = stem + ".csv"
    write_csv(report, csv_path)
    written.append(csv_path)
    fig_path = stem + "_margins.png"
    _error_figure(report, fig_path)
    if os.path.exists(fig_path):
        written.append(fig_path)
    conv_path = stem + "_refinement.png"
    _convergence_figure(report, conv_path)
    if os.path.exists(conv_path):
        written.append(conv_path)
    return written
