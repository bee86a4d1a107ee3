"""Validation reports.

Checks never raise on failure; they collect named failures with a
witness expression (usually the nonzero residue) into a report.
"""

from __future__ import annotations

from typing import Protocol

from pydantic import BaseModel, Field, computed_field


class Residue(Protocol):
    """Anything with a zero test and a canonical rendering."""

    def is_zero(self) -> bool: ...

    def __str__(self) -> str: ...


class CheckFailure(BaseModel):
    """A single failed check and its witness."""

    check: str
    witness: str


class ValidationReport(BaseModel):
    """Outcome of a batch of checks.

    Example:
        report = ValidationReport(subject="sphere")
        report.record("trace", trace - n)
        if not report.passed:
            print(report.render())
    """

    subject: str = ""
    checks: list[str] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    failures: list[CheckFailure] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        """True iff no check failed."""
        return not self.failures

    def record(self, check: str, residue: Residue) -> bool:
        """Run-and-record a residue check.

        Args:
            check: Name of the check
            residue: Value that must be zero for the check to pass

        Returns:
            True if the residue is zero
        """
        if check not in self.checks:
            self.checks.append(check)
        if residue.is_zero():
            return True
        self.failures.append(CheckFailure(check=check, witness=str(residue)))
        return False

    def fail(self, check: str, witness: str) -> None:
        """Record a failure with a free-form witness."""
        if check not in self.checks:
            self.checks.append(check)
        self.failures.append(CheckFailure(check=check, witness=witness))

    def note(self, line: str) -> None:
        """Attach an informational line."""
        self.notes.append(line)

    def extend(self, other: ValidationReport) -> None:
        """Merge another report into this one."""
        for check in other.checks:
            if check not in self.checks:
                self.checks.append(check)
        self.notes.extend(other.notes)
        self.failures.extend(other.failures)

    def render(self) -> str:
        """Render as aligned text, one line per note and failure."""
        status = "passed" if self.passed else "failed"
        head = f"{self.subject}: {status}" if self.subject else status
        lines = [head]
        lines.extend(f"  {note}" for note in self.notes)
        lines.extend(f"  FAILED {f.check}: {f.witness}" for f in self.failures)
        return "\n".join(lines)
