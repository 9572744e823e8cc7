"""Check records and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact.poly import UPoly
from .exact.ratmap import ProjPoint
from .padic import INF

SUITE_VERSION = "1"


def jsonable(x):
    """Convert exact values to JSON-ready data; rationals become strings, ints stay ints."""
    if x is INF:
        return "inf"
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (UPoly, ProjPoint)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return str(x)


@dataclass(frozen=True)
class CheckRecord:
    family: str
    check: str
    inputs: dict
    expected: object
    actual: object
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "check": self.check,
            "inputs": jsonable(self.inputs),
            "expected": jsonable(self.expected),
            "actual": jsonable(self.actual),
            "pass": bool(self.passed),
        }
        out.update(jsonable(self.extra))
        return out

    def sort_key(self):
        return (self.family, self.check, json.dumps(jsonable(self.inputs), sort_keys=True))


def record(family, check, inputs, expected, actual, passed=None, **extra) -> CheckRecord:
    if passed is None:
        passed = expected == actual
    return CheckRecord(family, check, dict(inputs), expected, actual, bool(passed), extra)


def build_report(records, wall_time=None) -> dict:
    recs = sorted(records, key=CheckRecord.sort_key)
    failures = sum(1 for r in recs if not r.passed)
    summary = {"checks": len(recs), "passed": len(recs) - failures, "failures": failures}
    if wall_time is not None:
        summary["wall_time"] = round(wall_time, 3)
    return {
        "suite_version": SUITE_VERSION,
        "records": [r.to_dict() for r in recs],
        "summary": summary,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "check", "inputs", "expected", "actual", "pass"])
    for r in report["records"]:
        w.writerow([
            r["family"],
            r["check"],
            json.dumps(r["inputs"], sort_keys=True),
            json.dumps(r["expected"], sort_keys=True),
            json.dumps(r["actual"], sort_keys=True),
            "true" if r["pass"] else "false",
        ])
    return buf.getvalue()
