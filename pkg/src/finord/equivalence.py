"""The four-way equivalence as an executable round trip.

Choice gives maximal elements (via the case-1 fixed point), maximal
elements in the poset of well-ordered chains give a well-ordering of the
base set, and a well-ordering gives back a choice function.  Each stage
records its inputs, outputs, and checks; the driver composes them and
closes the loop by re-running the choice-driven well-ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations
from typing import Any

from .bitsets import bit_list, full_mask, has_bit, iter_bits
from .certificates import Check, all_passed
from .config import DEFAULT_BOUNDS, Bounds
from .constructions import (
    ChoiceFunction,
    InflationaryMap,
    fixed_point_moroianu,
    zermelo_well_order,
)
from .errors import CarrierTooLarge, NotInductive
from .order_core import (
    Chain,
    Preorder,
    is_inductive,
    iter_totally_ordered_subsets,
    maximal_elements,
    strict_up,
)
from .recursion import merge_chains


@dataclass(frozen=True)
class ChainPoset:
    """All well-ordered chains over a base carrier, ordered by prefix.

    Elements enumerate every ordered sequence of distinct base elements
    (sum over k of C(base_n, k) * k! of them); the order relation holds
    iff one sequence is a prefix of the other, which for finite chains
    is exactly: subset, order agreement, and segment-of.
    """

    base_n: int
    elements: tuple[Chain, ...]
    order: Preorder

    def index_of(self, chain: Chain) -> int:
        return self.elements.index(chain)


def build_chain_poset(base_n: int, *, bounds: Bounds = DEFAULT_BOUNDS) -> ChainPoset:
    """Materialize the chain poset and assert its inductivity.

    Every prefix-chain of chains merges (merge_chains) to its longest
    member, which the poset contains and which bounds the chain; the
    assertion walks every totally ordered subset, which stays cheap
    because the prefix order is a tree.
    """
    if base_n > bounds.chain_poset_cap:
        raise CarrierTooLarge(base_n, bounds.chain_poset_cap)
    elements = tuple(
        Chain(seq) for k in range(base_n + 1) for seq in permutations(range(base_n), k)
    )
    count = len(elements)
    rows = []
    for a in elements:
        row = 0
        for j, b in enumerate(elements):
            if a.is_prefix_of(b):
                row |= 1 << j
        rows.append(row)
    order = Preorder(count, tuple(rows))

    for mask in iter_totally_ordered_subsets(order):
        merged = merge_chains([elements[i] for i in iter_bits(mask)])
        j = elements.index(merged)
        if any(not order.leq(i, j) for i in iter_bits(mask)):
            raise AssertionError("merge of a prefix-chain failed to bound it")
    return ChainPoset(base_n, elements, order)


def kneser_maximal(
    P: Preorder, c: ChoiceFunction, *, bounds: Bounds = DEFAULT_BOUNDS
) -> int:
    """Maximal element from a choice function.

    Builds f fixing maximal elements and strictly ascending elsewhere,
    then takes the case-1 fixed point starting at c(full carrier): a
    fixed point of that f cannot be non-maximal.  The upper-bound
    prerequisite is verified inside the fixed-point run.
    """
    if P.n == 0:
        raise ValueError("empty carrier has no maximal element")
    maximal = maximal_elements(P)
    values = tuple(
        x if has_bit(maximal, x) else c.choose(strict_up(P, x)) for x in range(P.n)
    )
    fp = fixed_point_moroianu(
        P, InflationaryMap(values), c, c.choose(P.carrier), bounds=bounds
    )
    assert has_bit(maximal, fp.b)
    return fp.b


def zorn_maximal(
    P: Preorder, c: ChoiceFunction, *, bounds: Bounds = DEFAULT_BOUNDS
) -> int:
    """Maximal element of an inductive preorder: inductivity is checked,
    then the work is delegated (well-ordered subsets are totally ordered,
    so inductive carriers satisfy the upper-bound prerequisite)."""
    if not is_inductive(P, bounds=bounds):
        raise NotInductive()
    return kneser_maximal(P, c, bounds=bounds)


def _poset_bounds(bounds: Bounds, size: int) -> Bounds:
    # the prefix order is a tree, so the chain walk stays small at any size
    if size > bounds.inductive_cap:
        return replace(bounds, inductive_cap=size)
    return bounds


def well_order_via_zorn(
    base_n: int, c: ChoiceFunction, *, bounds: Bounds = DEFAULT_BOUNDS
) -> Chain:
    """Well-order the base set by taking a maximal element of the chain
    poset; maximality forces it to cover the carrier (anything missing
    could be appended).  ``c`` chooses over chain-poset indices."""
    poset = build_chain_poset(base_n, bounds=bounds)
    idx = zorn_maximal(poset.order, c, bounds=_poset_bounds(bounds, poset.order.n))
    w = poset.elements[idx]
    if w.bits != full_mask(base_n):
        raise AssertionError("maximal chain does not cover the carrier")
    return w


def choice_from_well_order(order: Chain) -> ChoiceFunction:
    """Table choice function: each non-empty subset maps to the member
    appearing earliest in the given well-ordering of the full carrier."""
    n = len(order)
    if order.bits != full_mask(n):
        raise ValueError("order must cover 0..n-1")
    position = {x: i for i, x in enumerate(order)}
    entries = {}
    for subset in range(1, 1 << n):
        entries[subset] = min(bit_list(subset), key=position.__getitem__)
    return ChoiceFunction.from_table(entries)


def derived_poset_rule(c0: ChoiceFunction) -> ChoiceFunction:
    """Positional rule applied to chain-poset indices, derived from the
    base choice function's kind; explicit tables cannot transfer to the
    larger carrier and fall back to min-index."""
    if c0.kind == "seeded":
        return ChoiceFunction.seeded(c0.seed)
    if c0.kind == "max-index":
        return ChoiceFunction.max_index()
    return ChoiceFunction.min_index()


@dataclass(frozen=True)
class Stage:
    name: str
    inputs: dict[str, Any]
    outputs: dict[str, Any]
    checks: tuple[Check, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class EquivalenceCertificate:
    base_n: int
    stages: tuple[Stage, ...]
    final: bool
    reproducibility: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "equivalence",
            "base_n": self.base_n,
            "stages": [s.to_dict() for s in self.stages],
            "final": self.final,
            "reproducibility": self.reproducibility,
        }


def round_trip(
    base_n: int, c0: ChoiceFunction, *, bounds: Bounds = DEFAULT_BOUNDS
) -> EquivalenceCertificate:
    """Drive choice -> maximal -> maximal-on-chains -> well-order -> choice
    and close the loop: the derived choice re-runs the choice-driven
    well-ordering and must reproduce the same order."""
    poset = build_chain_poset(base_n, bounds=bounds)
    rule = derived_poset_rule(c0)
    inner = _poset_bounds(bounds, poset.order.n)
    stages: list[Stage] = []

    maximal = maximal_elements(poset.order)
    b1 = kneser_maximal(poset.order, rule, bounds=inner)
    stages.append(
        Stage(
            "choice-gives-maximal",
            {"carrier": poset.order.n, "choice": rule.to_payload()},
            {"element": b1, "chain": list(poset.elements[b1])},
            (Check("result-is-maximal", has_bit(maximal, b1)),),
        )
    )

    b2 = zorn_maximal(poset.order, rule, bounds=inner)
    stages.append(
        Stage(
            "inductive-gives-maximal",
            {"carrier": poset.order.n, "choice": rule.to_payload()},
            {"element": b2, "chain": list(poset.elements[b2])},
            (Check("result-is-maximal", has_bit(maximal, b2)),),
        )
    )

    w = well_order_via_zorn(base_n, rule, bounds=bounds)
    stages.append(
        Stage(
            "maximal-gives-well-order",
            {"base_n": base_n, "choice": rule.to_payload()},
            {"order": list(w)},
            (
                Check("covers-carrier", w.bits == full_mask(base_n)),
                Check("well-ordering-is-chain", len(set(w.seq)) == len(w)),
            ),
        )
    )

    c1 = choice_from_well_order(w)
    law = all(
        has_bit(subset, c1.choose(subset)) for subset in range(1, 1 << base_n)
    )
    stages.append(
        Stage(
            "well-order-gives-choice",
            {"order": list(w)},
            {"choice": c1.to_payload()},
            (Check("choice-law-all-nonempty-subsets", law),),
        )
    )

    w2 = zermelo_well_order(base_n, c1)
    stepwise = all(
        c1.choose(full_mask(base_n) & ~w.prefix(i).bits) == w[i]
        for i in range(base_n)
    )
    stages.append(
        Stage(
            "choice-rebuilds-well-order",
            {"choice": c1.to_payload()},
            {"order": list(w2)},
            (
                Check("reproduces-order", w2.seq == w.seq),
                Check("next-is-least-of-suffix", stepwise),
            ),
        )
    )

    final = all(all_passed(s.checks) for s in stages)
    return EquivalenceCertificate(
        base_n=base_n,
        stages=tuple(stages),
        final=final,
        reproducibility={
            "base_choice": c0.to_payload(),
            "poset_choice": rule.to_payload(),
            "sample_seed": bounds.sample_seed,
        },
    )
