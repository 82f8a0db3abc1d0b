"""Stable text rendering for audit records.

Every audit in the library reports through an :class:`AuditRecord`: an
ordered list of entries, each either an informational value or a check
with pass/fail/n-a status.  Rendering is deterministic, one entry per
line, `name = value [status]`, suitable for golden-file comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "n/a"
    INFO = "info"


@dataclass(frozen=True, slots=True)
class Entry:
    name: str
    value: str
    status: Status


@dataclass
class AuditRecord:
    title: str
    entries: list[Entry] = field(default_factory=list)

    def info(self, name: str, value) -> None:
        self.entries.append(Entry(name, str(value), Status.INFO))

    def check(self, name: str, passed: bool, lhs=None, rhs=None) -> None:
        if lhs is None:
            value = ""
        elif rhs is None:
            value = str(lhs)
        else:
            value = f"{lhs} {rhs}"
        self.entries.append(Entry(name, value, Status.PASS if passed else Status.FAIL))

    def not_applicable(self, name: str, reason: str = "") -> None:
        self.entries.append(Entry(name, reason, Status.NA))

    def get(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def failed(self) -> list[Entry]:
        return [e for e in self.entries if e.status is Status.FAIL]

    @property
    def not_applicable_entries(self) -> list[Entry]:
        return [e for e in self.entries if e.status is Status.NA]

    @property
    def ok(self) -> bool:
        """True when no applicable check failed."""
        return not self.failed

    def render(self) -> str:
        lines = [f"[{self.title}]"]
        for e in self.entries:
            if e.status is Status.INFO:
                lines.append(f"{e.name} = {e.value}")
            elif e.value:
                lines.append(f"{e.name} = {e.value} {e.status.value}")
            else:
                lines.append(f"{e.name} = {e.status.value}")
        return "\n".join(lines) + "\n"
