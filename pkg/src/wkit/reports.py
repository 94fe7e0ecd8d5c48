"""Check-report record shared by all verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict


@dataclass
class CheckReport:
    """One verification outcome.

    pass/fail is derived: passed <=> residual <= tolerance.  `identity`
    names the mathematical relation being tested so a failure is traceable
    without reading the suite code.  `inputs` echoes the parameter point.
    """

    suite: str
    check: str
    identity: str
    inputs: dict
    residual: float
    tolerance: float
    wall_ms: float = 0.0
    passed: bool = field(init=False)

    def __post_init__(self):
        self.residual = float(self.residual)
        self.tolerance = float(self.tolerance)
        self.passed = bool(self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["inputs"] = _jsonable(self.inputs)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        d = dict(d)
        d.pop("passed", None)
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonable(obj):
    """Convert complex numbers to [re, im] pairs, recursively."""
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def sort_reports(reports: list[CheckReport]) -> list[CheckReport]:
    """Canonical order: (suite, check, input repr) — independent of
    execution order so concurrent suites emit identical bytes."""
    return sorted(reports, key=lambda r: (r.suite, r.check, json.dumps(_jsonable(r.inputs), sort_keys=True)))
