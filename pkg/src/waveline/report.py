"""Check results, run reports, and deterministic serialization.

Reports are written so that re-running the same configuration produces a
byte-identical run_report.json: wall-clock time is kept on the in-memory
report (and echoed to the terminal) but deliberately left out of the file.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class CheckResult:
    """One named pass/fail measurement against its threshold."""

    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def as_dict(self):
        d = {
            "name": self.name,
            "status": self.status,
            "value": self.value,
            "tolerance": self.tolerance,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


def threshold_check(name, value, tolerance, detail=""):
    """CheckResult that passes when value <= tolerance."""
    return CheckResult(
        name=name, passed=bool(value <= tolerance), value=float(value),
        tolerance=float(tolerance), detail=detail,
    )


def floor_check(name, value, floor, detail=""):
    """CheckResult that passes when value >= floor (e.g. convergence orders)."""
    return CheckResult(
        name=name, passed=bool(value >= floor), value=float(value),
        tolerance=float(floor), detail=detail or "passes at or above the threshold",
    )


def window_check(name, value, lo, hi, detail=""):
    """CheckResult that passes when lo <= value <= hi."""
    return CheckResult(
        name=name, passed=bool(lo <= value <= hi), value=float(value),
        tolerance=float(hi), detail=detail or f"expected within [{lo:g}, {hi:g}]",
    )


def failed_check(name, exc):
    """CheckResult recording that a check raised instead of measuring."""
    return CheckResult(
        name=name, passed=False, value=float("nan"), tolerance=float("nan"),
        detail=f"{type(exc).__name__}: {exc}",
    )


@dataclass(frozen=True)
class RunReport:
    command: str
    config: dict
    checks: tuple
    wall_clock_s: float

    @property
    def overall(self):
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def as_json_dict(self):
        # wall_clock_s intentionally omitted: the file must be reproducible.
        return {
            "command": self.command,
            "overall": self.overall,
            "checks": [c.as_dict() for c in self.checks],
            "config": self.config,
        }


def format_check_line(check):
    tol = "" if check.tolerance != check.tolerance else f"  tol={check.tolerance:.6g}"
    val = "nan" if check.value != check.value else f"{check.value:.6g}"
    line = f"[{check.status.upper():4s}] {check.name}  value={val}{tol}"
    if check.detail:
        line += f"  ({check.detail})"
    return line


def write_json(path, obj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def write_csv(path, header, rows):
    """CSV with full float round-trip precision via repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
