from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    check: str
    dim: int | None
    passed: bool
    witness: Any = None
    count: int = 0

    @property
    def key(self) -> tuple:
        return (self.check, -1 if self.dim is None else self.dim)

    def to_json(self) -> dict:
        d: dict[str, Any] = {"check": self.check, "dim": self.dim}
        d["status"] = "pass" if self.passed else {"witness": self.witness}
        if self.count:
            d["count"] = self.count
        return d


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, dim: int | None, failures: list, count: int = 0) -> CheckResult:
        res = CheckResult(check, dim, not failures, failures[0] if failures else None, count)
        self.checks.append(res)
        return res

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, check: str, dim: int | None = None) -> CheckResult:
        for c in self.checks:
            if c.check == check and (dim is None or c.dim == dim):
                return c
        raise KeyError((check, dim))

    def lines(self) -> list[str]:
        ordered = sorted(self.checks, key=lambda c: c.key)
        return [json.dumps(c.to_json(), sort_keys=True, default=str) for c in ordered]

    def digest(self) -> str:
        return hashlib.sha256("\n".join(self.lines()).encode()).hexdigest()

    def __str__(self) -> str:
        out = []
        for c in sorted(self.checks, key=lambda c: c.key):
            where = "" if c.dim is None else f" dim {c.dim}"
            status = "pass" if c.passed else f"FAIL witness={c.witness}"
            out.append(f"{c.check}{where}: {status}")
        return "\n".join(out)
