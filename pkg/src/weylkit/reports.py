"""Check/report containers shared by the verification routines."""
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Check", "ScenarioReport"]


@dataclass(frozen=True)
class Check:
    """One residual compared against a tolerance."""

    label: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""

    @classmethod
    def le(cls, label, residual, tolerance, note=""):
        residual = float(residual)
        return cls(label, residual, float(tolerance),
                   bool(np.isfinite(residual) and residual <= tolerance), note)

    @classmethod
    def flag(cls, label, ok, note=""):
        return cls(label, 0.0 if ok else 1.0, 0.0, bool(ok), note)


@dataclass
class ScenarioReport:
    """Named list of checks; the verdict is their conjunction."""

    name: str
    checks: list = field(default_factory=list)
    notes: str = ""
    data: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return all(c.passed for c in self.checks)

    @property
    def passed(self):
        return self.verdict

    def add(self, check):
        self.checks.append(check)
        return check

    def le(self, label, residual, tolerance, note=""):
        return self.add(Check.le(label, residual, tolerance, note))

    def flag(self, label, ok, note=""):
        return self.add(Check.flag(label, ok, note))

    def get(self, label):
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.label, c.residual, c.tolerance, c.passed, c.note))
        return self

    def lines(self):
        """Fixed-order ``key = value`` lines (residuals at 17 significant digits)."""
        out = ["scenario = %s" % self.name,
               "verdict = %s" % ("pass" if self.verdict else "fail"),
               "checks = %d" % len(self.checks)]
        for c in self.checks:
            out.append("check.%s.residual = %.16e" % (c.label, c.residual))
            out.append("check.%s.tolerance = %.16e" % (c.label, c.tolerance))
            out.append("check.%s.pass = %s" % (c.label, "true" if c.passed else "false"))
            if c.note:
                out.append("check.%s.note = %s" % (c.label, c.note))
        for key in sorted(self.data):
            out.append("data.%s = %s" % (key, _fmt(self.data[key])))
        if self.notes:
            out.append("notes = %s" % self.notes.replace("\n", " "))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return "%d" % v
    if isinstance(v, (float, np.floating)):
        return "%.16e" % v
    if isinstance(v, complex):
        return "%.16e%+.16ej" % (v.real, v.imag)
    if isinstance(v, np.ndarray):
        flat = np.asarray(v, dtype=complex).ravel()
        return "[" + ", ".join(_fmt(complex(x)) for x in flat) + "]"
    return str(v)
