"""Structured verification reports.

Every checker in the package returns a :class:`CheckReport`: a list of named
clauses, each PASS, FAIL (with witness index tuples pointing at the offending
basis elements) or SKIPPED (not applicable, with the reason in ``detail``).
Failure is data, not an exception; a report is falsy only through ``ok``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

Witness = tuple[int, ...]

_MAX_SHOWN = 8


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    status: Status
    witnesses: tuple[Witness, ...] = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "clause": self.clause,
            "status": self.status.value,
            "witnesses": [list(w) for w in self.witnesses],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class CheckReport:
    title: str
    clauses: tuple[ClauseResult, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.status is not Status.FAIL for c in self.clauses)

    def failures(self) -> list[ClauseResult]:
        return [c for c in self.clauses if c.status is Status.FAIL]

    def skipped(self) -> list[ClauseResult]:
        return [c for c in self.clauses if c.status is Status.SKIPPED]

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)

    def prefixed(self, prefix: str) -> "CheckReport":
        """Same report with every clause name prefixed (for nesting)."""
        return CheckReport(
            self.title,
            tuple(ClauseResult(f"{prefix}{c.clause}", c.status, c.witnesses, c.detail)
                  for c in self.clauses),
            self.notes,
        )

    @staticmethod
    def merge(title: str, reports: list["CheckReport"], notes: tuple[str, ...] = ()) -> "CheckReport":
        clauses: list[ClauseResult] = []
        merged_notes = list(notes)
        for r in reports:
            clauses.extend(r.clauses)
            merged_notes.extend(r.notes)
        return CheckReport(title, tuple(clauses), tuple(merged_notes))

    def to_dict(self) -> dict:
        return {
            "claim": self.title,
            "ok": self.ok,
            "notes": list(self.notes),
            "clauses": [c.to_dict() for c in self.clauses],
        }

    def __str__(self):
        lines = [f"== {self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for note in self.notes:
            lines.append(f"   note: {note}")
        for c in self.clauses:
            line = f"  [{c.status}] {c.clause}"
            if c.detail:
                line += f" ({c.detail})"
            if c.witnesses:
                shown = ", ".join(str(w) for w in c.witnesses[:_MAX_SHOWN])
                more = len(c.witnesses) - _MAX_SHOWN
                line += f" witnesses: {shown}" + (f" ... +{more} more" if more > 0 else "")
            lines.append(line)
        return "\n".join(lines)


def clause_from_witnesses(name: str, witnesses: list[Witness], detail: str = "") -> ClauseResult:
    """PASS when the witness list is empty, FAIL listing the witnesses otherwise."""
    if witnesses:
        return ClauseResult(name, Status.FAIL, tuple(sorted(witnesses)), detail)
    return ClauseResult(name, Status.PASS, (), detail)


def skipped_clause(name: str, reason: str) -> ClauseResult:
    return ClauseResult(name, Status.SKIPPED, (), reason)
