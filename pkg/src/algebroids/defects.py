"""Defect reports: the common output of every structure check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping

from .scalar import Scalar, to_literal
from .tensors import Section, _Alternating

__all__ = ["DefectReport", "StructureError", "as_entries"]


class StructureError(ValueError):
    """A validating constructor rejected its input; ``report`` says why."""

    def __init__(self, message: str, report: "DefectReport | None" = None):
        super().__init__(message)
        self.report = report


def as_entries(value: Any) -> dict[tuple[int, ...], Scalar]:
    """Flatten a defect tensor into ``{index tuple: nonzero Scalar}``."""
    if isinstance(value, Scalar):
        return {} if value.is_zero() else {(): value}
    if isinstance(value, Section):
        return {(i,): c for i, c in enumerate(value.coeffs) if not c.is_zero()}
    if isinstance(value, _Alternating):
        return dict(value.coeffs)
    if isinstance(value, Mapping):
        out = {}
        for k, v in value.items():
            key = k if isinstance(k, tuple) else (k,)
            if isinstance(v, Scalar):
                if not v.is_zero():
                    out[key] = v
            else:
                for sub, s in as_entries(v).items():
                    out[key + sub] = s
        return out
    raise TypeError(f"cannot read a defect from {type(value).__name__}")


@dataclass
class DefectReport:
    """Named defect tensors plus boolean side conditions.

    A report passes when every tensor is identically zero and every
    condition holds.  Only nonzero entries are stored.
    """

    entries: dict[str, dict[tuple[int, ...], Scalar]] = field(default_factory=dict)
    conditions: dict[str, bool] = field(default_factory=dict)

    def add(self, name: str, value: Any) -> "DefectReport":
        self.entries[name] = as_entries(value)
        return self

    def require(self, name: str, holds: bool) -> "DefectReport":
        self.conditions[name] = bool(holds)
        return self

    def extend(self, other: "DefectReport", prefix: str = "") -> "DefectReport":
        for k, v in other.entries.items():
            self.entries[prefix + k] = dict(v)
        for k, v in other.conditions.items():
            self.conditions[prefix + k] = v
        return self

    def __getitem__(self, name: str) -> dict[tuple[int, ...], Scalar]:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries or name in self.conditions

    def __iter__(self) -> Iterator[str]:
        yield from self.entries
        yield from self.conditions

    def passes(self, name: str) -> bool:
        if name in self.entries:
            return not self.entries[name]
        return self.conditions[name]

    @property
    def ok(self) -> bool:
        return all(not v for v in self.entries.values()) and all(self.conditions.values())

    def failing(self) -> list[str]:
        return [k for k in self if not self.passes(k)]

    def to_dict(self) -> dict:
        """Plain-data form with literal-grammar strings and sorted keys."""
        out: dict = {}
        for name in sorted(self.entries):
            vals = self.entries[name]
            out[name] = {
                "verdict": "pass" if not vals else "fail",
                "nonzero": {",".join(map(str, k)) or "-": to_literal(v) for k, v in sorted(vals.items())},
            }
        for name in sorted(self.conditions):
            out[name] = {"verdict": "pass" if self.conditions[name] else "fail"}
        return dict(sorted(out.items()))

    def __str__(self) -> str:
        lines = []
        for name, body in self.to_dict().items():
            lines.append(f"{name}: {body['verdict']}")
            for k, v in body.get("nonzero", {}).items():
                lines.append(f"  [{k}] {v}")
        return "\n".join(lines)
