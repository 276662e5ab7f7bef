"""Pass/fail records with machine-checkable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactlin import Vec, format_scalar


def vec_json(v: Vec | None):
    if v is None:
        return None
    return [[k, format_scalar(x)] for k, x in sorted(v.items())]


@dataclass(frozen=True)
class AxiomReport:
    axiom_id: str
    holds: bool
    counterexample: tuple | None = None
    lhs: Any = None
    rhs: Any = None
    note: str = ""

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"axiom": self.axiom_id, "holds": self.holds}
        if self.counterexample is not None:
            out["witness"] = {
                "basis": list(self.counterexample),
                "lhs": vec_json(self.lhs) if isinstance(self.lhs, dict) else self.lhs,
                "rhs": vec_json(self.rhs) if isinstance(self.rhs, dict) else self.rhs,
            }
        if self.note:
            out["note"] = self.note
        return out


def passed(axiom_id: str, note: str = "") -> AxiomReport:
    return AxiomReport(axiom_id, True, note=note)


def failed(axiom_id: str, witness: tuple, lhs, rhs, note: str = "") -> AxiomReport:
    return AxiomReport(axiom_id, False, tuple(witness), lhs, rhs, note)


@dataclass
class CheckLog:
    """Ordered collection of named outcomes used by the pipeline reports."""

    entries: list = field(default_factory=list)

    def record(self, name: str, ok: bool, **detail) -> bool:
        self.entries.append({"check": name, "pass": bool(ok), **detail})
        return bool(ok)

    def extend(self, reports) -> None:
        for r in reports:
            self.entries.append({"check": r.axiom_id, "pass": r.holds, **r.to_json()})

    @property
    def ok(self) -> bool:
        return all(e["pass"] for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e["pass"]]

    def to_json(self) -> list:
        return list(self.entries)
