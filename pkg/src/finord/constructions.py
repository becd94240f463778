"""The named constructions layered on the greedy recursion.

Each operation instantiates a StepRule, runs construct_tb_chain, and
packages the outcome with every checkable condition:

* kanamori_construct: any total powerset-to-element map yields a chain
  whose prefixes map to their successors and whose full set maps inside.
* non_injectivity_witness: two distinct subsets with equal image, read
  off the Kanamori chain.
* zermelo_well_order: a choice function well-orders the whole carrier.
* fixed_point_bourbaki / fixed_point_moroianu: an inflationary map on a
  carrier whose well-ordered subsets have least upper bounds (case 2) or
  a choice function plus plain upper bounds (case 1) has a fixed point,
  exactly on antisymmetric carriers and up to equivalence otherwise.
* kuratowski_fixed_point: a union-closed set family with an inclusion-
  inflationary self-map has an exact fixed member.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .bitsets import bit_list, full_mask, has_bit, iter_bits, mask_of
from .certificates import Check
from .config import DEFAULT_BOUNDS, Bounds
from .errors import (
    HypothesisFailed,
    NotInflationary,
    NotUnionClosed,
    TableIncomplete,
)
from .order_core import (
    Chain,
    Preorder,
    canonical_sup,
    is_well_ordered_subset,
    iter_totally_ordered_subsets,
    least_upper_bounds,
    strict_down,
    strictly_less,
    upper_bounds,
)
from .recursion import StepRule, TBWitness, construct_tb_chain

RULE_KINDS = ("min-index", "max-index", "table", "seeded")


@dataclass(frozen=True)
class ChoiceFunction:
    """Assigns to every queried non-empty subset one of its members.

    kinds: "min-index" / "max-index" (positional rules), "seeded"
    (member at position seed mod size, members in increasing index
    order), "table" (explicit subset-to-member entries, validated on
    construction, must cover every queried subset).
    """

    kind: str
    table: tuple[tuple[int, int], ...] | None = None
    seed: int | None = None
    _map: dict | None = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown choice kind {self.kind!r}")
        if self.kind == "table":
            mapping = dict(self.table or ())
            for subset, value in mapping.items():
                if subset == 0 or not has_bit(subset, value):
                    raise ValueError(f"choice table entry {value} outside subset {subset}")
            object.__setattr__(self, "_map", mapping)
        if self.kind == "seeded" and self.seed is None:
            raise ValueError("seeded choice needs a seed")

    @classmethod
    def min_index(cls) -> "ChoiceFunction":
        return cls("min-index")

    @classmethod
    def max_index(cls) -> "ChoiceFunction":
        return cls("max-index")

    @classmethod
    def seeded(cls, seed: int) -> "ChoiceFunction":
        return cls("seeded", seed=seed)

    @classmethod
    def from_table(
        cls, entries: Mapping[int, int] | Iterable[tuple[int, int]]
    ) -> "ChoiceFunction":
        return cls("table", table=tuple(sorted(dict(entries).items())))

    def choose(self, subset: int) -> int:
        if subset == 0:
            raise ValueError("choice function queried on the empty set")
        if self.kind == "min-index":
            return (subset & -subset).bit_length() - 1
        if self.kind == "max-index":
            return subset.bit_length() - 1
        if self.kind == "seeded":
            members = bit_list(subset)
            return members[self.seed % len(members)]
        value = self._map.get(subset)
        if value is None:
            raise TableIncomplete(subset)
        return value

    def to_payload(self) -> dict:
        if self.kind == "table":
            return {"table": [[s, v] for s, v in self.table]}
        if self.kind == "seeded":
            return {"seeded": self.seed}
        return {"rule": self.kind}

    @classmethod
    def from_payload(cls, payload: Mapping) -> "ChoiceFunction":
        if "rule" in payload:
            return cls(str(payload["rule"]))
        if "seeded" in payload:
            return cls.seeded(int(payload["seeded"]))
        if "table" in payload:
            return cls.from_table((int(s), int(v)) for s, v in payload["table"])
        raise ValueError("choice payload needs one of: rule, seeded, table")


@dataclass(frozen=True)
class PowersetMap:
    """Total map from every subset of the carrier to an element."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise ValueError(
                f"powerset map needs {1 << self.n} entries, got {len(self.table)}"
            )
        for subset, value in enumerate(self.table):
            if not 0 <= value < self.n:
                raise ValueError(f"entry for subset {subset} out of range: {value}")

    def __call__(self, subset: int) -> int:
        return self.table[subset]

    @classmethod
    def from_entries(
        cls, n: int, entries: Mapping[int, int] | Iterable[tuple[int, int]]
    ) -> "PowersetMap":
        mapping = dict(entries)
        table = []
        for subset in range(1 << n):
            if subset not in mapping:
                raise TableIncomplete(subset)
            table.append(mapping[subset])
        return cls(n, tuple(table))

    @classmethod
    def from_callable(cls, n: int, fn) -> "PowersetMap":
        return cls(n, tuple(fn(s) for s in range(1 << n)))

    def to_payload(self) -> list[list[int]]:
        return [[s, v] for s, v in enumerate(self.table)]


@dataclass(frozen=True)
class InflationaryMap:
    """Self-map with x <= f(x) everywhere; validated against a carrier."""

    values: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.values[x]

    def validate(self, P: Preorder) -> None:
        if len(self.values) != P.n:
            raise ValueError(f"map covers {len(self.values)} elements, carrier has {P.n}")
        for x, fx in enumerate(self.values):
            if not 0 <= fx < P.n or not P.leq(x, fx):
                raise NotInflationary(x)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "InflationaryMap":
        mapping = dict(pairs)
        missing = [x for x in range(n) if x not in mapping]
        if missing:
            raise TableIncomplete(1 << missing[0])
        return cls(tuple(mapping[x] for x in range(n)))

    def to_payload(self) -> list[list[int]]:
        return [[x, fx] for x, fx in enumerate(self.values)]


@dataclass(frozen=True)
class HypothesisReport:
    """How a fixed-point prerequisite was verified."""

    case: int
    mode: str  # "exhaustive" | "sampled"
    subsets_checked: int


@dataclass(frozen=True)
class FixedPointWitness:
    b: int
    mode: str  # "exact" | "up-to-equivalence"
    tb: TBWitness
    hypothesis_report: HypothesisReport
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


@lru_cache(maxsize=4096)
def _well_ordered_chains(P: Preorder) -> tuple[Chain, ...]:
    return tuple(
        chain
        for mask in range(1 << P.n)
        if (chain := is_well_ordered_subset(P, mask)) is not None
    )


def _check_bound_hypothesis(
    P: Preorder, case: int, bounds: Bounds
) -> HypothesisReport:
    """Every well-ordered subset must have a least upper bound (case 2)
    or any upper bound (case 1).  Exhaustive subset scan up to the cap,
    seeded sampling beyond it; raises HypothesisFailed with the first
    offending chain."""
    if P.n <= bounds.hypothesis_cap:
        chains = _well_ordered_chains(P)
        mode = "exhaustive"
    else:
        rng = random.Random(bounds.sample_seed)
        masks = {0} | {rng.randrange(1 << P.n) for _ in range(bounds.sample_size)}
        chains = tuple(
            chain
            for mask in sorted(masks)
            if (chain := is_well_ordered_subset(P, mask)) is not None
        )
        mode = "sampled"
    for chain in chains:
        bound = (
            least_upper_bounds(P, chain.bits) if case == 2 else upper_bounds(P, chain.bits)
        )
        if bound == 0:
            raise HypothesisFailed(chain)
    return HypothesisReport(case, mode, len(chains))


def kanamori_construct(n: int, psi: PowersetMap) -> TBWitness:
    """Chain whose prefixes map to their successors under psi, with the
    terminal condition in the form psi(chain set) inside the chain set."""
    rule = StepRule.from_rule(
        domain=lambda subset: not has_bit(subset, psi(subset)),
        phi=psi,
        name="kanamori",
    )
    tb = construct_tb_chain(n, rule)
    final = Check("psi-of-set-in-set", has_bit(tb.chain.bits, psi(tb.chain.bits)))
    return TBWitness(tb.chain, tb.step_log, tb.checks + (final,))


def non_injectivity_witness(n: int, psi: PowersetMap) -> tuple[int, int]:
    """Two subsets A != B with psi(A) == psi(B); A is a strict subset of B.

    A is the prefix of the Kanamori chain below the repeated value,
    B the full chain set.
    """
    tb = kanamori_construct(n, psi)
    value = psi(tb.chain.bits)
    position = tb.chain.seq.index(value)
    a = mask_of(tb.chain.seq[:position])
    return a, tb.chain.bits


def zermelo_well_order(n: int, c: ChoiceFunction) -> Chain:
    """Well-order the whole carrier: keep choosing from the complement."""
    full = full_mask(n)
    rule = StepRule.from_rule(
        domain=lambda subset: subset != full,
        phi=lambda subset: c.choose(full & ~subset),
        name="zermelo",
    )
    tb = construct_tb_chain(n, rule)
    assert tb.chain.bits == full  # the recursion only stops at the full set
    return tb.chain


def _fixed_point_common(
    P: Preorder,
    f: InflationaryMap,
    a: int,
    pick_bound,
    case: int,
    name: str,
    bounds: Bounds,
) -> FixedPointWitness:
    if not 0 <= a < P.n:
        raise ValueError(f"start element {a} outside carrier of size {P.n}")
    f.validate(P)
    report = _check_bound_hypothesis(P, case, bounds)

    def domain(subset: int) -> bool:
        if subset == 0:
            return True
        if not has_bit(subset, a):
            return False
        m = pick_bound(subset)
        if m is None:
            return False
        return not has_bit(subset, m) or strictly_less(P, m, f(m))

    def step(subset: int) -> int:
        if subset == 0:
            return a
        m = pick_bound(subset)
        return m if not has_bit(subset, m) else f(m)

    tb = construct_tb_chain(P.n, StepRule.from_rule(domain, step, name=name))
    bits = tb.chain.bits
    b = pick_bound(bits)
    assert b is not None  # every visited subset keeps a bound; see tests
    mode = "exact" if f(b) == b else "up-to-equivalence"
    checks = tb.checks + (
        Check("b-in-chain", has_bit(bits, b)),
        Check("b-bounds-chain", not bits & ~P.down[b]),
        Check("fixed-point-up-to-equivalence", P.leq(b, f(b)) and P.leq(f(b), b)),
    )
    return FixedPointWitness(b, mode, tb, report, checks)


def fixed_point_bourbaki(
    P: Preorder, f: InflationaryMap, a: int, *, bounds: Bounds = DEFAULT_BOUNDS
) -> FixedPointWitness:
    """Case 2: least upper bounds exist for well-ordered subsets.

    Accepted subsets contain the start, have a canonical sup m, and
    satisfy m outside or f(m) strictly above; the step appends m or f(m)
    accordingly.  The witness element is the canonical sup of the final
    chain set.
    """
    return _fixed_point_common(
        P, f, a, lambda subset: canonical_sup(P, subset), 2, "bourbaki", bounds
    )


def fixed_point_moroianu(
    P: Preorder,
    f: InflationaryMap,
    c: ChoiceFunction,
    a: int,
    *,
    bounds: Bounds = DEFAULT_BOUNDS,
) -> FixedPointWitness:
    """Case 1: a choice function picks among plain upper bounds.

    Identical recursion with m = c(upper bounds) in place of the
    canonical sup.
    """

    def pick(subset: int) -> int | None:
        ub = upper_bounds(P, subset)
        return None if ub == 0 else c.choose(ub)

    return _fixed_point_common(P, f, a, pick, 1, "moroianu", bounds)


@dataclass(frozen=True)
class KuratowskiWitness:
    member: int
    index: int
    start_index: int
    fixed_point: FixedPointWitness
    closure_mode: str  # "exhaustive" | "chains+sampled"
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _inclusion_order(family: Sequence[int]) -> Preorder:
    rows = []
    for a in family:
        row = 0
        for j, b in enumerate(family):
            if not a & ~b:
                row |= 1 << j
        rows.append(row)
    return Preorder(len(family), tuple(rows))


def _check_union_closed(
    family: Sequence[int], order: Preorder, bounds: Bounds
) -> str:
    members = set(family)
    k = len(family)
    if 0 not in members:
        raise NotUnionClosed(())  # union of the empty subfamily
    if k <= bounds.family_cap:
        unions = [0] * (1 << k)
        for picks in range(1, 1 << k):
            low = picks & -picks
            unions[picks] = unions[picks ^ low] | family[low.bit_length() - 1]
            if unions[picks] not in members:
                raise NotUnionClosed(tuple(bit_list(picks)))
        return "exhaustive"
    # beyond the cap: every union of an inclusion-chain, plus seeded samples
    for picks in iter_totally_ordered_subsets(order):
        union = 0
        for i in iter_bits(picks):
            union |= family[i]
        if union not in members:
            raise NotUnionClosed(tuple(bit_list(picks)))
    rng = random.Random(bounds.sample_seed)
    for _ in range(bounds.sample_size):
        picks = rng.randrange(1 << k)
        union = 0
        for i in iter_bits(picks):
            union |= family[i]
        if union not in members:
            raise NotUnionClosed(tuple(bit_list(picks)))
    return "chains+sampled"


def kuratowski_fixed_point(
    ground_size: int,
    family: Sequence[int],
    f: Sequence[int],
    *,
    bounds: Bounds = DEFAULT_BOUNDS,
) -> KuratowskiWitness:
    """Fixed member of an inclusion-inflationary map on a union-closed family.

    ``family`` lists distinct subsets of a ground set 0..ground_size-1 as
    bitmasks; ``f`` maps family indices to family indices with
    member <= f(member) under inclusion.  Builds the inclusion preorder,
    starts the case-2 recursion at the least-index minimal member, and
    returns an exactly fixed member (inclusion is antisymmetric).
    """
    family = tuple(int(m) for m in family)
    if not family:
        raise ValueError("family is empty")
    ground = full_mask(ground_size)
    for m in family:
        if m & ~ground:
            raise ValueError(f"family member {m} outside ground set of size {ground_size}")
    if len(set(family)) != len(family):
        raise ValueError("family has duplicate members")
    f = tuple(int(x) for x in f)
    if len(f) != len(family):
        raise ValueError("f must cover every family member")
    for i, j in enumerate(f):
        if not 0 <= j < len(family):
            raise ValueError(f"f({i}) = {j} outside the family")
        if family[i] & ~family[j]:
            raise NotInflationary(i)

    order = _inclusion_order(family)
    closure_mode = _check_union_closed(family, order, bounds)
    minimal = [i for i in range(len(family)) if strict_down(order, i) == 0]
    start = min(minimal)
    fp = fixed_point_bourbaki(order, InflationaryMap(f), start, bounds=bounds)
    checks = (
        Check("union-closed", True, detail=closure_mode),
        Check("inflationary", True),
        Check("fixed-member", f[fp.b] == fp.b),
        Check("contains-start", not family[start] & ~family[fp.b]),
    ) + fp.checks
    return KuratowskiWitness(
        member=family[fp.b],
        index=fp.b,
        start_index=start,
        fixed_point=fp,
        closure_mode=closure_mode,
        checks=checks,
    )
