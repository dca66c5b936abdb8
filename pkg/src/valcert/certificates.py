"""Machine-checked certificate records and report rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["Certificate", "Report", "PASS", "FAIL", "BUDGET"]

PASS = "pass"
FAIL = "fail"
BUDGET = "budget-exceeded"


@dataclass
class Certificate:
    """Outcome of one named check: expected vs actual, exact.

    ``status`` is "pass" only when the expected value or identity matched
    exactly (or the asserted inequality held); "budget-exceeded" means the
    check was abandoned because a polynomial outgrew the size budget.
    """

    id: str
    params: dict = field(default_factory=dict)
    expected: str = ""
    actual: str = ""
    status: str = PASS
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_record(self) -> dict:
        # elapsed is deliberately excluded: structured reports must be
        # byte-identical for identical run configurations.
        return {
            "id": self.id,
            "params": self.params,
            "expected": self.expected,
            "actual": self.actual,
            "status": self.status,
        }

    def text_row(self) -> str:
        status = self.status.upper()
        return f"{status:<16} {self.id:<44} expected {self.expected}  actual {self.actual}"


@dataclass
class Report:
    """A flat list of certificates plus the run header."""

    tool: str
    version: str
    config: dict
    certificates: list[Certificate] = field(default_factory=list)

    def extend(self, certs) -> None:
        self.certificates.extend(certs)

    @property
    def warnings(self) -> list[str]:
        return [f"budget exceeded in {c.id}" for c in self.certificates if c.status == BUDGET]

    def exit_code(self) -> int:
        return 1 if any(c.failed for c in self.certificates) else 0

    def to_json(self) -> str:
        doc = {
            "tool": self.tool,
            "version": self.version,
            "config": self.config,
            "warnings": self.warnings,
            "certificates": [c.to_record() for c in self.certificates],
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.tool} {self.version}  config={self.config}"]
        lines += [c.text_row() + f"  [{c.elapsed:.3f}s]" for c in self.certificates]
        n_pass = sum(c.passed for c in self.certificates)
        n_fail = sum(c.failed for c in self.certificates)
        n_budget = len(self.certificates) - n_pass - n_fail
        summary = f"{n_pass} passed, {n_fail} failed"
        if n_budget:
            summary += f", {n_budget} budget-exceeded"
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(summary)
        return "\n".join(lines) + "\n"
