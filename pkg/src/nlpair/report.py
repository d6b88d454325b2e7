"""Pass/fail reports shared by every verification routine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    counts: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def extend(self, other: "Report", prefix: str | None = None) -> None:
        prefix = other.suite if prefix is None else prefix
        for c in other.checks:
            self.checks.append(Check(f"{prefix}: {c.name}" if prefix else c.name, c.passed, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        checks = []
        for c in self.checks:
            entry = {"name": c.name, "pass": c.passed}
            if not c.passed:
                entry["witness"] = c.witness
            checks.append(entry)
        return {"suite": self.suite, "checks": checks, "counts": self.counts, "pass": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def to_text(self) -> str:
        lines = [f"{self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{'ok' if c.passed else 'FAIL'}] {c.name}"
            if not c.passed:
                line += f"  witness={json.dumps(c.witness, default=str)}"
            lines.append(line)
        for k, v in self.counts.items():
            lines.append(f"  {k} = {json.dumps(v, default=str)}")
        return "\n".join(lines) + "\n"
