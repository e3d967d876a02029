"""Check/Report containers shared by the verification suites."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Check:
    identity_name: str
    max_abs_error: float
    tolerance: float
    asserted: bool = True
    worst_sample: Any = None
    note: str | None = None
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(self.max_abs_error <= self.tolerance)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["max_abs_error"] = float(self.max_abs_error)
        return d


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def record(self, name: str, errors, tolerance: float, samples=None,
               asserted: bool = True, note: str | None = None) -> Check:
        """Add a check from a sequence of per-sample errors (max is kept)."""
        errors = list(errors)
        if not errors:
            raise ValueError(f"no samples for {name}")
        worst = max(range(len(errors)), key=lambda i: errors[i])
        sample = samples[worst] if samples is not None else None
        return self.add(Check(name, float(errors[worst]), tolerance, asserted, sample, note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.asserted)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.asserted and not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.identity_name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.identity_name for c in self.checks]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "info": self.info,
        }
