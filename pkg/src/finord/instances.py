"""Instance files: one JSON document drives every CLI command.

Fields (all optional except ``elements``):

    elements  list of display labels; its length is the carrier size
    relation  list of [i, j] pairs meaning i <= j
    closure   bool; apply reflexive-transitive closure before validating
    f         list of [x, f(x)] pairs (also the family map for kuratowski)
    psi       list of [subset-bitmask, element] pairs, all 2^n subsets
    phi       {"domain": [bitmask, ...], "map": [[bitmask, element], ...]}
    choice    {"rule": "min-index"|"max-index"} | {"table": [...]} | {"seeded": k}
    start     element index
    family    list of subset bitmasks over the element carrier (kuratowski)

Structural problems raise InstanceError naming the field; commands ignore
fields they do not use (the CLI warns about those).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .bitsets import full_mask
from .constructions import ChoiceFunction, InflationaryMap, PowersetMap
from .errors import FinordError, InstanceError
from .order_core import Preorder, validate_preorder
from .recursion import StepRule

FIELDS = ("elements", "relation", "closure", "f", "psi", "phi", "choice", "start", "family")


@dataclass
class Instance:
    n: int
    labels: tuple[str, ...]
    relation: list[list[int]] | None
    closure: bool
    f: list[list[int]] | None
    psi: list[list[int]] | None
    phi: dict[str, Any] | None
    choice: dict[str, Any] | None
    start: int | None
    family: list[int] | None

    def present_fields(self) -> set[str]:
        present = {"elements"}
        for name in ("relation", "f", "psi", "phi", "choice", "start", "family"):
            if getattr(self, name) is not None:
                present.add(name)
        if self.closure:
            present.add("closure")
        return present

    def echo(self) -> dict[str, Any]:
        """Normalized copy sufficient to replay any command."""
        out: dict[str, Any] = {"elements": list(self.labels)}
        if self.relation is not None:
            out["relation"] = [list(p) for p in self.relation]
        if self.closure:
            out["closure"] = True
        for name in ("f", "psi", "phi", "choice", "start", "family"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


def _index(value: Any, n: int, fieldname: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n:
        raise InstanceError(fieldname, f"expected an element index in 0..{n - 1}, got {value!r}")
    return value


def _pair_list(value: Any, fieldname: str) -> list[list[int]]:
    if not isinstance(value, list) or any(
        not isinstance(p, list) or len(p) != 2 for p in value
    ):
        raise InstanceError(fieldname, "expected a list of [a, b] pairs")
    return value


def parse_instance(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("document", "instance file must be a JSON object")
    unknown = set(doc) - set(FIELDS)
    if unknown:
        raise InstanceError(sorted(unknown)[0], "unknown field")
    if "elements" not in doc:
        raise InstanceError("elements", "missing required field")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InstanceError("elements", "expected a list of label strings")
    n = len(elements)

    relation = None
    if "relation" in doc:
        relation = _pair_list(doc["relation"], "relation")
        for i, j in relation:
            _index(i, n, "relation")
            _index(j, n, "relation")

    closure = bool(doc.get("closure", False))

    f = None
    if "f" in doc:
        f = _pair_list(doc["f"], "f")

    psi = None
    if "psi" in doc:
        psi = _pair_list(doc["psi"], "psi")

    phi = None
    if "phi" in doc:
        phi = doc["phi"]
        if (
            not isinstance(phi, dict)
            or not isinstance(phi.get("domain"), list)
            or not isinstance(phi.get("map"), list)
        ):
            raise InstanceError("phi", 'expected {"domain": [...], "map": [[subset, element], ...]}')

    choice = None
    if "choice" in doc:
        choice = doc["choice"]
        if not isinstance(choice, dict):
            raise InstanceError("choice", "expected an object")

    start = None
    if "start" in doc:
        start = _index(doc["start"], n, "start")

    family = None
    if "family" in doc:
        family = doc["family"]
        ground = full_mask(n)
        if not isinstance(family, list) or not all(
            isinstance(m, int) and 0 <= m <= ground for m in family
        ):
            raise InstanceError("family", f"expected subset bitmasks in 0..{ground}")

    return Instance(
        n=n,
        labels=tuple(elements),
        relation=relation,
        closure=closure,
        f=f,
        psi=psi,
        phi=phi,
        choice=choice,
        start=start,
        family=family,
    )


def load_instance(path: str) -> Instance:
    try:
        with open(path) as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InstanceError("file", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise InstanceError("file", f"invalid JSON: {exc}") from exc
    return parse_instance(doc)


def instance_preorder(inst: Instance, *, force_closure: bool = False) -> Preorder:
    if inst.relation is None:
        raise InstanceError("relation", "missing required field")
    matrix = [[False] * inst.n for _ in range(inst.n)]
    for i, j in inst.relation:
        matrix[i][j] = True
    return validate_preorder(
        matrix, closure=inst.closure or force_closure, labels=inst.labels
    )


def instance_choice(inst: Instance) -> ChoiceFunction:
    if inst.choice is None:
        raise InstanceError("choice", "missing required field")
    try:
        return ChoiceFunction.from_payload(inst.choice)
    except (ValueError, FinordError) as exc:
        raise InstanceError("choice", str(exc)) from exc


def instance_inflationary(inst: Instance) -> InflationaryMap:
    if inst.f is None:
        raise InstanceError("f", "missing required field")
    try:
        return InflationaryMap.from_pairs(
            inst.n, ((_index(x, inst.n, "f"), _index(y, inst.n, "f")) for x, y in inst.f)
        )
    except FinordError as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError("f", str(exc)) from exc


def instance_psi(inst: Instance) -> PowersetMap:
    if inst.psi is None:
        raise InstanceError("psi", "missing required field")
    try:
        return PowersetMap.from_entries(inst.n, ((int(s), int(v)) for s, v in inst.psi))
    except (ValueError, FinordError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError("psi", str(exc)) from exc


def instance_step_rule(inst: Instance) -> StepRule:
    if inst.phi is None:
        raise InstanceError("phi", "missing required field")
    domain = inst.phi["domain"]
    entries = {}
    for item in inst.phi["map"]:
        if not isinstance(item, list) or len(item) != 2:
            raise InstanceError("phi", "map entries must be [subset, element] pairs")
        entries[int(item[0])] = _index(item[1], inst.n, "phi")
    if set(domain) != set(entries):
        raise InstanceError("phi", "domain and map must list the same subsets")
    ceiling = full_mask(inst.n)
    for subset in entries:
        if not 0 <= subset <= ceiling:
            raise InstanceError("phi", f"subset {subset} outside the carrier")
    try:
        return StepRule.from_table(entries)
    except FinordError as exc:
        raise InstanceError("phi", str(exc)) from exc


def instance_family(inst: Instance) -> tuple[int, list[int]]:
    if inst.family is None:
        raise InstanceError("family", "missing required field")
    return inst.n, list(inst.family)


def instance_family_map(inst: Instance, size: int) -> list[int]:
    if inst.f is None:
        raise InstanceError("f", "missing required field")
    values = {}
    for x, y in inst.f:
        if not isinstance(x, int) or not isinstance(y, int) or not (0 <= x < size and 0 <= y < size):
            raise InstanceError("f", f"expected family-index pairs in 0..{size - 1}")
        values[x] = y
    missing = [i for i in range(size) if i not in values]
    if missing:
        raise InstanceError("f", f"no image for family member {missing[0]}")
    return [values[i] for i in range(size)]
