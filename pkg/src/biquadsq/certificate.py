from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class PlaceCertificate:
    """One local check: which place, the rule applied, what it computed."""

    type: str  # "infinite" | "odd" | "dyadic"
    rule: str
    passed: bool
    p: int | None = None
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"type": self.type}
        if self.p is not None:
            out["p"] = self.p
        out.update(rule=self.rule, data=self.data, **{"pass": self.passed})
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PlaceCertificate":
        return cls(d["type"], d["rule"], d["pass"], d.get("p"), dict(d.get("data", {})))
