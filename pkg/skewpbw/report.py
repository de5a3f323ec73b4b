"""Structured results shared by every verifying operation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import json
import logging
from typing import Any

import voluptuous as vol

from .const import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS

_LOGGER: logging.Logger = logging.getLogger(__package__)


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Check:
    name: str
    status: Status
    evidence: str = ""


@dataclass
class Report:
    """Outcome of a command: named checks plus free-form computed values."""

    command: str
    ring: str = ""
    checks: list[Check] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, status: Status | bool, evidence: str = "") -> Check:
        if isinstance(status, bool):
            status = Status.PASS if status else Status.FAIL
        check = Check(name, status, evidence)
        self.checks.append(check)
        if status is Status.FAIL:
            _LOGGER.warning("%s: check %s failed: %s", self.command, name, evidence)
        else:
            _LOGGER.debug("%s: check %s %s", self.command, name, status.value)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(Check(prefix + check.name, check.status, check.evidence))

    def check(self, name: str) -> Check:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    @property
    def status(self) -> Status:
        statuses = {check.status for check in self.checks}
        if Status.FAIL in statuses:
            return Status.FAIL
        if Status.INCONCLUSIVE in statuses:
            return Status.INCONCLUSIVE
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failures(self) -> list[Check]:
        return [check for check in self.checks if check.status is Status.FAIL]

    @property
    def exit_code(self) -> int:
        return {
            Status.PASS: EXIT_PASS,
            Status.FAIL: EXIT_FAIL,
            Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
        }[self.status]

    def as_dict(self) -> dict[str, Any]:
        return REPORT_SCHEMA(
            {
                "command": self.command,
                "ring": self.ring,
                "status": self.status.value,
                "checks": [
                    {
                        "name": check.name,
                        "status": check.status.value,
                        "evidence": check.evidence,
                    }
                    for check in self.checks
                ],
                "values": {key: _plain(value) for key, value in self.values.items()},
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def render(self) -> str:
        lines = [f"{self.command}" + (f" [{self.ring}]" if self.ring else "")]
        for check in self.checks:
            line = f"  {check.status.value.upper():<12} {check.name}"
            if check.evidence:
                line += f": {check.evidence}"
            lines.append(line)
        for key, value in self.values.items():
            lines.append(f"  {key} = {_plain(value)}")
        lines.append(f"status: {self.status.value}")
        return "\n".join(lines)


def _plain(value: Any) -> Any:
    """JSON-friendly copy; anything algebraic is rendered with str()."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return str(value)


CHECK_SCHEMA = vol.Schema(
    {
        vol.Required("name"): str,
        vol.Required("status"): vol.In([status.value for status in Status]),
        vol.Required("evidence"): str,
    }
)

REPORT_SCHEMA = vol.Schema(
    {
        vol.Required("command"): str,
        vol.Required("ring"): str,
        vol.Required("status"): vol.In([status.value for status in Status]),
        vol.Required("checks"): [CHECK_SCHEMA],
        vol.Required("values"): dict,
    }
)
