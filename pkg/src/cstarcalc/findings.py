"""Uniform pass/fail records for validation and consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Finding:
    rule: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return f"{status:4s} {self.rule}" + (f": {self.detail}" if self.detail else "")


def all_ok(findings: Iterable[Finding]) -> bool:
    return all(f.ok for f in findings)


def failures(findings: Iterable[Finding]) -> list[Finding]:
    return [f for f in findings if not f.ok]
