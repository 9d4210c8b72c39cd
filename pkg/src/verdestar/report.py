"""Check reports shared by the catalog battery, limit certification and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
ERROR = "ERROR"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        tail = f" {self.detail}" if self.detail else ""
        return f"CHECK {self.name}: {self.status}{tail}"


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, PASS if ok else FAIL, detail))

    def error(self, name: str, exc: BaseException | str) -> None:
        if isinstance(exc, BaseException):
            detail = f"{type(exc).__name__}: {exc}"
        else:
            detail = exc
        self.checks.append(CheckResult(name, ERROR, detail))

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.status, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def status_of(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def render(self) -> str:
        return "\n".join(c.line() for c in self.checks)
