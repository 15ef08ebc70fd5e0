"""Structured pass/fail reports with printable counterexamples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

PASS = "pass"
FAIL = "fail"
UNCERTIFIED = "uncertified"


@dataclass
class CheckRecord:
    name: str
    identity: str
    status: str
    witnesses: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "identity": self.identity,
            "status": self.status,
            "witnesses": list(self.witnesses),
        }


class Report:
    """Ordered list of check records.

    A report *passes* when no record failed; ``uncertified`` records flag
    properties that could not be decided and do not count as failures.
    """

    def __init__(self, title: str = ""):
        self.title = title
        self.records: list[CheckRecord] = []

    def add(self, name: str, identity: str, status,
            witnesses: Iterable[str] = ()) -> CheckRecord:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        if status not in (PASS, FAIL, UNCERTIFIED):
            raise ValueError(f"invalid status {status!r}")
        record = CheckRecord(name, identity, status, tuple(witnesses))
        self.records.append(record)
        return record

    def merge(self, other: "Report", prefix: str = "") -> None:
        for rec in other.records:
            name = f"{prefix}{rec.name}" if prefix else rec.name
            self.records.append(CheckRecord(name, rec.identity, rec.status,
                                            rec.witnesses))

    @property
    def passed(self) -> bool:
        return all(rec.status != FAIL for rec in self.records)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[CheckRecord]:
        return [rec for rec in self.records if rec.status == FAIL]

    def record(self, name: str) -> CheckRecord:
        for rec in self.records:
            if rec.name == name:
                return rec
        raise KeyError(name)

    def render_text(self) -> str:
        lines = []
        if self.title:
            lines.append(self.title)
        for rec in self.records:
            lines.append(f"[{rec.status.upper():>11}] {rec.name}: {rec.identity}")
            for wit in rec.witnesses:
                lines.append(f"    {wit}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"title": self.title,
                "records": [rec.to_dict() for rec in self.records]}
