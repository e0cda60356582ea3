"""Run reports: rows of evaluated checks and their text/JSON rendering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

REPORT_FORMAT = "entrobound-report/1"


@dataclass(frozen=True)
class ReportRow:
    """One evaluated check.

    ``kind == "inequality"``: passes when ``lhs - rhs >= -tolerance``.
    ``kind == "value"``: ``lhs`` is the computed quantity, ``rhs`` the
    expected one, and it passes when they agree within ``tolerance``.
    ``kind == "range"``: ``lhs`` must fall inside ``[low, high]`` where
    ``rhs`` holds ``low`` and ``tolerance`` holds ``high``.
    """

    check: str
    instance: str
    lhs: float
    rhs: float
    tolerance: float
    kind: str = "inequality"
    reproducer: dict | None = field(default=None, compare=False)

    @property
    def slack(self) -> float:
        if self.kind == "value":
            return -abs(self.lhs - self.rhs)
        if self.kind == "range":
            return min(self.lhs - self.rhs, self.tolerance - self.lhs)
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        if self.kind == "value":
            return abs(self.lhs - self.rhs) <= self.tolerance
        if self.kind == "range":
            return self.rhs <= self.lhs <= self.tolerance
        return self.slack >= -self.tolerance

    @property
    def label(self) -> str:
        if self.kind == "value":
            return f"{self.check} = {self.lhs:.6f}"
        if self.kind == "range":
            return f"{self.check} in [{self.rhs:g}, {self.tolerance:g}]"
        return self.check


@dataclass
class RunReport:
    source: str
    rows: list[ReportRow] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[ReportRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def worst(self) -> ReportRow | None:
        ineq = [r for r in self.rows if r.kind == "inequality"]
        return min(ineq, key=lambda r: r.slack) if ineq else None

    def summary(self) -> dict:
        worst = self.worst()
        return {
            "total": len(self.rows),
            "passed": len(self.rows) - len(self.failures),
            "failed": len(self.failures),
            "min_slack": None if worst is None else _num(worst.slack),
            "worst_instance": None if worst is None else _row_dict(worst, embed=True),
        }


def _num(x: float):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _row_dict(row: ReportRow, embed: bool) -> dict:
    out = {
        "check": row.check,
        "instance": row.instance,
        "kind": row.kind,
        "lhs": _num(row.lhs),
        "rhs": _num(row.rhs),
        "slack": _num(row.slack),
        "tolerance": _num(row.tolerance),
        "passed": row.passed,
    }
    if embed and row.reproducer is not None:
        out["reproducer"] = row.reproducer
    return out


def _human(report: RunReport) -> str:
    header = ("check", "instance", "LHS", "RHS", "slack", "verdict")
    table = [header]
    for r in report.rows:
        table.append(
            (r.label, r.instance, f"{r.lhs:.6f}", f"{r.rhs:.6f}", f"{r.slack:+.3e}",
             "pass" if r.passed else "FAIL")
        )
    widths = [max(len(row[k]) for row in table) for k in range(len(header))]
    lines = [f"# {report.source}"]
    for row in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    if report.rows:
        s = report.summary()
        worst_slack = None if report.worst() is None else report.worst().slack
        lines.append("")
        slack = "n/a" if worst_slack is None else f"{worst_slack:+.3e}"
        lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed, min slack {slack}")
    for r in report.failures:
        lines.append("")
        lines.append(f"--- reproducer: {r.check} / {r.instance} ---")
        lines.append(json.dumps(r.reproducer, indent=2) if r.reproducer is not None else "(none)")
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, format: str = "human") -> str:
    """Render a report as an aligned table (``human``) or versioned JSON (``json``)."""
    if format == "human":
        return _human(report)
    if format != "json":
        raise ValueError(f"unknown report format {format!r}")
    payload = {
        "format": REPORT_FORMAT,
        "source": report.source,
        "meta": report.meta,
        "summary": report.summary(),
        "rows": [_row_dict(r, embed=not r.passed) for r in report.rows],
    }
    return json.dumps(payload, indent=2) + "\n"
