"""Check reports: named verification results with exact residual witnesses."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import sympy as sp

from .expr import to_text

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class Check:
    id: str
    description: str
    ref: str  # source-claim tag, or "plumbing"
    status: str
    residual: str = "0"
    witness: dict | None = None
    ms: int = 0

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.ref,
            "status": self.status,
            "residual": self.residual,
            "witness": self.witness,
            "ms": self.ms,
        }


@dataclass
class Report:
    suite: str
    seed: int = 0
    checks: list[Check] = field(default_factory=list)

    @property
    def status(self) -> str:
        for c in self.checks:
            if c.status == FAIL:
                return FAIL
        return PASS

    def passed(self) -> bool:
        return self.status == PASS

    def add(
        self,
        id: str,
        description: str,
        ref: str,
        ok: bool | None,
        residual=sp.Integer(0),
        witness: dict | None = None,
        ms: int = 0,
    ) -> Check:
        if ok is None:
            status = INFO
        else:
            status = PASS if ok else FAIL
        if isinstance(residual, (sp.Expr, int)):
            residual = to_text(sp.sympify(residual))
        check = Check(id, description, ref, status, residual, witness, ms)
        self.checks.append(check)
        return check

    def check(self, id, description, ref, residual_zero: bool, residual=sp.Integer(0)):
        """Record a pass/fail check whose evidence is an exact residual."""
        return self.add(id, description, ref, residual_zero, residual)

    def info(self, id, description, ref, residual=sp.Integer(0), witness=None):
        return self.add(id, description, ref, None, residual, witness)

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]


class timed:
    """Context manager stamping elapsed milliseconds onto a Check."""

    def __init__(self):
        self.ms = 0

    def __enter__(self):
        self._t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.monotonic() - self._t0) * 1000)
        return False


def render_text(report: Report) -> str:
    lines = [f"suite: {report.suite}    seed: {report.seed}"]
    width = max((len(c.id) for c in report.checks), default=4)
    for c in report.checks:
        line = f"  [{c.status:>4}] {c.id:<{width}}  {c.description}"
        if c.status == FAIL:
            line += f"  residual = {c.residual}"
            if c.witness:
                line += f"  at {c.witness}"
        lines.append(line)
    lines.append(f"status: {report.status}")
    return "\n".join(lines)


def render_json(report: Report, timings: bool = False) -> str:
    """Canonical JSON; ``ms`` is zeroed unless timings are requested so
    that same-seed runs are byte-identical."""
    doc = {
        "suite": report.suite,
        "seed": report.seed,
        "checks": [
            {**c.as_dict(), "ms": c.ms if timings else 0} for c in report.checks
        ],
        "status": report.status,
    }
    return json.dumps(doc, indent=2, sort_keys=False)


def render_report(report: Report, format: str = "text", timings: bool = False) -> str:
    if format == "text":
        return render_text(report)
    if format == "json":
        return render_json(report, timings=timings)
    raise ValueError(f"unknown report format {format!r}")
