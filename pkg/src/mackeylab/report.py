# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Check reports emitted by the verification commands."""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from mackeylab import __version__

logger = logging.getLogger(__name__)


class Status(Enum):
    """Outcome of a check."""

    PASS = "pass"
    FAIL = "fail"


@dataclass(frozen=True)
class Finding:
    """One compared quantity of a check."""

    item: str
    expected: Any
    got: Any
    ok: bool

    def to_json(self) -> dict[str, Any]:
        """{item, expected, got, ok}"""
        return {"item": self.item, "expected": self.expected, "got": self.got, "ok": self.ok}


@dataclass
class CheckReport:
    """Findings of one verification run.

    The status is derived: a report passes iff none of its findings failed. The elapsed time
    is wall clock and never part of the canonical JSON.
    """

    check: str
    params: dict[str, Any]
    findings: list[Finding] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list[Finding]:
        """Findings that did not hold."""
        return [f for f in self.findings if not f.ok]

    @property
    def status(self) -> Status:
        """PASS iff every finding holds."""
        return Status.FAIL if self.failures else Status.PASS

    @property
    def passed(self) -> bool:
        """Whether the report passes."""
        return self.status is Status.PASS

    def compare(self, item: str, expected: Any, got: Any) -> Finding:
        """Record a finding that holds iff ``expected == got``.

        Args:
            item (str): what is compared
            expected (Any): JSON compatible expected value
            got (Any): JSON compatible computed value

        Returns:
            Finding: the recorded finding
        """
        return self.record(item, expected, got, expected == got)

    def record(self, item: str, expected: Any, got: Any, ok: bool) -> Finding:
        """Record a finding with an explicit verdict."""
        finding = Finding(item, expected, got, ok)
        self.findings.append(finding)
        if not ok:
            logger.warning("%s: %s expected %s, got %s", self.check, item, expected, got)
        return finding

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        """Append the findings of another report, prefixing their items."""
        for f in other.findings:
            self.findings.append(Finding(f"{prefix}{f.item}", f.expected, f.got, f.ok))

    def to_json(self) -> dict[str, Any]:
        """Canonical JSON object, without the elapsed time."""
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status.value,
            "details": [f.to_json() for f in self.findings],
            "version": __version__,
        }

    def dumps(self) -> str:
        """Canonical JSON text: byte-identical for identical checks."""
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        """Plain-text table for humans."""
        params = " ".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        lines = [f"{self.check} {params}: {self.status.value.upper()}"]
        for f in self.findings:
            mark = "ok  " if f.ok else "FAIL"
            lines.append(f"  [{mark}] {f.item}: expected {f.expected}, got {f.got}")
        return "\n".join(lines)


def dumps_all(reports: list[CheckReport]) -> str:
    """Canonical JSON for several reports: a single object or an array."""
    if len(reports) == 1:
        return reports[0].dumps()
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)
