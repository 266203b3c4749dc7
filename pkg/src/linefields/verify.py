"""Named equality checks collected into a report."""

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    lhs: object
    rhs: object
    tol: float
    passed: bool
    source: str
    informational: bool = False
    detail: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        tag = " (informational)" if self.informational else ""
        return f"[{status}] {self.name}: {self.lhs} vs {self.rhs}{tag}  -- {self.source}"

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "tol": self.tol,
            "pass": self.passed,
            "source": self.source,
            "informational": self.informational,
            "detail": _plain(self.detail),
        }


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def equal_check(name, lhs, rhs, source, tol=0.0, **kw):
    if tol:
        ok = abs(lhs - rhs) <= tol
    else:
        ok = lhs == rhs
    return Check(name, lhs, rhs, tol, bool(ok), source, **kw)


def failed_check(name, source, exc):
    return Check(
        name, None, None, 0.0, False, source, detail={"error": getattr(exc, "code", "ERROR"), "message": str(exc)}
    )


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def to_dict(self):
        out = {"pass": self.passed, "checks": [c.to_dict() for c in self.checks]}
        out.update(_plain(self.meta))
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def render(self):
        lines = [c.line() for c in self.checks]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
