"""Check records and the certificate container emitted by the CLI.

A certificate is self-contained: it echoes the inputs, lists every checked
condition with its outcome, and carries the seeds/rules needed to replay
the run byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

VERSION = "0.1.0"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)


@dataclass
class Certificate:
    kind: str
    inputs: dict[str, Any]
    witness: dict[str, Any] | None
    checks: list[Check]
    modes: dict[str, Any] = field(default_factory=dict)
    reproducibility: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all_passed(self.checks)

    def to_dict(self) -> dict[str, Any]:
        # witness is only published when every check passed
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "witness": self.witness if self.passed else None,
            "checks": [c.to_dict() for c in self.checks],
            "modes": self.modes,
            "reproducibility": dict(self.reproducibility, version=VERSION),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def canonical_json(payload: Any) -> str:
    """Deterministic serialization; equal payloads give equal bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
