"""Pass/fail records produced by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool | None  # None when the check does not apply
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        status = {True: "pass", False: "fail", None: "not applicable"}[self.passed]
        return {"name": self.name, "status": status, **self.detail}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool | None, **detail) -> Check:
        c = Check(name, passed, detail)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = {True: "PASS", False: "FAIL", None: "N/A "}[c.passed]
            extra = ", ".join(f"{k}={v}" for k, v in c.detail.items())
            out.append(f"{status} {c.name}" + (f" ({extra})" if extra else ""))
        return out
