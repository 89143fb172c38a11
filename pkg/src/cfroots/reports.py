"""Small result containers shared by the verification machinery and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a single named check with its measured extremal values."""

    name: str
    passed: bool
    measured: dict[str, float] = field(default_factory=dict)
    tolerance: float | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": {k: float(v) for k, v in self.measured.items()},
        }
        if self.tolerance is not None:
            out["tolerance"] = float(self.tolerance)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    """Mergeable collection of check results."""

    checks: list[CheckReport] = field(default_factory=list)
    label: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckReport) -> None:
        self.checks.append(check)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        merged = VerificationReport(list(self.checks) + list(other.checks), self.label)
        return merged

    def __getitem__(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if self.label:
            out["label"] = self.label
        return out

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    def summary_lines(self) -> list[str]:
        prefix = f"{self.label}: " if self.label else ""
        return [
            f"{prefix}{c.name}: {'pass' if c.passed else 'FAIL'}" for c in self.checks
        ]
