from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import __version__

# Outcomes that count as a failed check under ``--strict``.
FAILING_OUTCOMES = frozenset({"invalid", "meaningless", "inconsistent", "error", "fail"})


@dataclass
class ItemResult:
    name: str
    kind: str
    outcome: str
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "outcome": self.outcome, "data": self.data}


@dataclass
class Report:
    scenario: str
    tolerance: float
    results: list[ItemResult] = field(default_factory=list)
    version: str = __version__

    def add(self, name, kind, outcome, **data) -> ItemResult:
        item = ItemResult(name, kind, outcome, data)
        self.results.append(item)
        return item

    def failed(self) -> bool:
        return any(r.outcome in FAILING_OUTCOMES for r in self.results)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "tolerance": self.tolerance,
            "results": [r.to_dict() for r in self.results],
        }


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def render(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"scenario: {report.scenario}  (tolerance {report.tolerance:g}, qhl {report.version})"]
    for r in report.results:
        lines.append(f"  [{r.outcome}] {r.kind} {r.name}")
        for k, v in r.data.items():
            lines.append(f"      {k}: {_fmt(v)}")
    return "\n".join(lines)
