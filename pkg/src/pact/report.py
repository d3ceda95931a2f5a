"""Structured pass/fail reports with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NA = "n/a"


@dataclass
class Clause:
    name: str
    status: str
    witness: Any = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"clause": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    clauses: list[Clause] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: Any = None, detail: str = "") -> Clause:
        clause = Clause(name, PASS if ok else FAIL, None if ok else witness, detail)
        self.clauses.append(clause)
        return clause

    def skip(self, name: str, detail: str) -> Clause:
        clause = Clause(name, NA, None, detail)
        self.clauses.append(clause)
        return clause

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.clauses:
            self.clauses.append(Clause(prefix + c.name, c.status, c.witness, c.detail))
        self.notes.extend(n for n in other.notes if n not in self.notes)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "clauses": [c.to_dict() for c in self.clauses],
            "notes": list(self.notes),
        }

    def render(self, witness: bool = True) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.clauses:
            line = f"  [{c.status:>4}] {c.name}"
            if c.detail and c.status == NA:
                line += f" ({c.detail})"
            lines.append(line)
            if witness and c.witness is not None:
                lines.append(f"         witness: {c.witness}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def first(items):
    """First element of an iterable, or ``None``."""
    return next(iter(items), None)
