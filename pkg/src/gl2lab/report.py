"""JSON serialization of verification reports with a fixed key order."""

from __future__ import annotations

import json
from pathlib import Path

from .checks import VerificationReport

KEY_ORDER = ("check", "params", "status", "counterexamples", "stats", "duration_ms", "seed",
             "version")


def report_json(report: VerificationReport) -> str:
    d = report.as_dict()
    assert tuple(d) == KEY_ORDER
    return json.dumps(d, indent=2, ensure_ascii=True) + "\n"


def write_report(report: VerificationReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(report_json(report))
    return path


def read_report(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
