"""Definition-level brute force used to cross-check every construction.

Nothing here calls into constructions or equivalence: scans work straight
off the relation data, so an agreement between an oracle and an operation
is evidence, not circularity.  (The one sanctioned exception is
tb_uniqueness_oracle, whose whole point is to filter raw sequences
through the two defining conditions.)
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from .bitsets import bit_list, full_mask, iter_bits, submasks
from .config import DEFAULT_BOUNDS, Bounds
from .constructions import ChoiceFunction, InflationaryMap, PowersetMap
from .errors import CarrierTooLarge, UniquenessViolated
from .order_core import Chain, Preorder
from .recursion import StepRule, verify_tb_conditions


@dataclass(frozen=True)
class InstanceGenerator:
    """Deterministic instance streams: same (seed, mode, bounds), same stream."""

    seed: int = 0
    mode: str = "random"  # "random" | "exhaustive"
    bounds: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, seed: int = 0, mode: str = "random", **bounds: int) -> "InstanceGenerator":
        return cls(seed=seed, mode=mode, bounds=tuple(sorted(bounds.items())))

    def bound(self, name: str, default: int) -> int:
        return dict(self.bounds).get(name, default)


def enumerate_preorders(n: int, *, bounds: Bounds = DEFAULT_BOUNDS) -> Iterator[Preorder]:
    """All labeled preorders on n elements: filter every off-diagonal
    assignment through the row-subset transitivity test."""
    if n > bounds.enumeration_cap:
        raise CarrierTooLarge(n, bounds.enumeration_cap)
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    for assignment in range(1 << len(positions)):
        rows = [1 << i for i in range(n)]
        for idx, (i, j) in enumerate(positions):
            if (assignment >> idx) & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(n):
            row = rows[i]
            for j in iter_bits(row):
                if rows[j] & ~row:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Preorder(n, tuple(rows))


def enumerate_preorders_matrix(n: int, *, bounds: Bounds = DEFAULT_BOUNDS) -> Iterator[tuple[tuple[bool, ...], ...]]:
    """Second, independent filter: iterate full boolean matrices and test
    reflexivity and transitivity with literal triple loops."""
    if n > bounds.enumeration_cap:
        raise CarrierTooLarge(n, bounds.enumeration_cap)
    for cells in itertools.product((False, True), repeat=n * n):
        mat = tuple(cells[i * n : (i + 1) * n] for i in range(n))
        if any(not mat[i][i] for i in range(n)):
            continue
        good = True
        for i in range(n):
            for j in range(n):
                if not mat[i][j]:
                    continue
                for k in range(n):
                    if mat[j][k] and not mat[i][k]:
                        good = False
                        break
                if not good:
                    break
            if not good:
                break
        if good:
            yield mat


def all_fixed_points(
    P: Preorder, f: Callable[[int], int] | Sequence[int], *, bounds: Bounds = DEFAULT_BOUNDS
) -> int:
    if P.n > bounds.scan_cap:
        raise CarrierTooLarge(P.n, bounds.scan_cap)
    apply = f.__getitem__ if isinstance(f, (list, tuple)) else f
    out = 0
    for x in range(P.n):
        if apply(x) == x:
            out |= 1 << x
    return out


def all_maximal(P: Preorder, *, bounds: Bounds = DEFAULT_BOUNDS) -> int:
    if P.n > bounds.scan_cap:
        raise CarrierTooLarge(P.n, bounds.scan_cap)
    out = 0
    for x in range(P.n):
        if not any(P.leq(x, y) and not P.leq(y, x) for y in range(P.n)):
            out |= 1 << x
    return out


def _strip_least(P: Preorder, subset: int) -> Chain | None:
    # the least-element definition applied literally: peel off the unique
    # least member until nothing remains
    seq = []
    rest = subset
    while rest:
        least = [
            x for x in iter_bits(rest) if all(P.leq(x, y) for y in iter_bits(rest))
        ]
        if len(least) != 1:
            return None
        seq.append(least[0])
        rest ^= 1 << least[0]
    return Chain(tuple(seq))


def all_well_ordered_subsets(
    P: Preorder, *, bounds: Bounds = DEFAULT_BOUNDS
) -> list[Chain]:
    if P.n > bounds.subset_scan_cap:
        raise CarrierTooLarge(P.n, bounds.subset_scan_cap)
    out = []
    for subset in range(1 << P.n):
        chain = _strip_least(P, subset)
        if chain is not None:
            out.append(chain)
    return out


def iter_distinct_sequences(n: int) -> Iterator[Chain]:
    """Every ordered sequence of distinct elements, shortest first."""
    for k in range(n + 1):
        for seq in itertools.permutations(range(n), k):
            yield Chain(seq)


def tb_uniqueness_oracle(
    n: int, rule: StepRule, *, bounds: Bounds = DEFAULT_BOUNDS
) -> Chain:
    """Filter every distinct-element sequence through the two defining
    conditions; exactly one must survive.  More or fewer survivors means
    a bug or an invalid table."""
    if n > bounds.enumeration_cap:
        raise CarrierTooLarge(n, bounds.enumeration_cap)
    if rule.table is None:
        raise ValueError("uniqueness oracle needs a table-backed rule")
    survivors = [c for c in iter_distinct_sequences(n) if verify_tb_conditions(n, rule, c)]
    if len(survivors) != 1:
        raise UniquenessViolated(len(survivors))
    return survivors[0]


def chain_extension_conditions(a: Chain, b: Chain) -> tuple[bool, bool, bool]:
    """The three extension conditions between two chains, from definitions:
    set containment, order agreement on common elements, and the smaller
    chain being a segment of the larger one's order."""
    pos_a = {x: i for i, x in enumerate(a)}
    pos_b = {x: i for i, x in enumerate(b)}
    contained = all(x in pos_b for x in pos_a)
    common = [x for x in a if x in pos_b]
    agrees = all(
        (pos_a[x] <= pos_a[y]) == (pos_b[x] <= pos_b[y])
        for x in common
        for y in common
    )
    segment = all(
        y in pos_a
        for x in a
        if x in pos_b
        for y in b
        if pos_b[y] < pos_b[x]
    )
    return contained, agrees, segment


def _random_downward_closed_rule(n: int, rng: random.Random) -> StepRule:
    full = full_mask(n)
    family: set[int] = set()
    for _ in range(rng.randrange(4)):
        generator = rng.randrange(full)  # excludes the full set
        family.update(submasks(generator))
    table = {}
    for subset in sorted(family):
        members = bit_list(full & ~subset)
        table[subset] = members[rng.randrange(len(members))]
    return StepRule.from_table(table, name="random-downward-closed")


def random_instances(
    kind: str, gen: InstanceGenerator, *, preorder: Preorder | None = None
) -> Iterator:
    """Streams of psi tables, choice tables, inflationary maps (members
    drawn from up-sets by construction, never by rejection), or step
    rules over random downward-closed families."""
    if gen.mode == "exhaustive":
        yield from _exhaustive_instances(kind, gen, preorder)
        return
    if gen.mode != "random":
        raise ValueError(f"unknown generator mode {gen.mode!r}")
    rng = random.Random(gen.seed)
    n = preorder.n if preorder is not None else gen.bound("n", 3)
    while True:
        if kind == "psi":
            yield PowersetMap(n, tuple(rng.randrange(n) for _ in range(1 << n)))
        elif kind == "choice":
            yield ChoiceFunction.from_table(
                {s: rng.choice(bit_list(s)) for s in range(1, 1 << n)}
            )
        elif kind == "inflationary":
            if preorder is None:
                raise ValueError("inflationary instances need a preorder")
            yield InflationaryMap(
                tuple(rng.choice(bit_list(preorder.up[x])) for x in range(n))
            )
        elif kind == "phispec":
            yield _random_downward_closed_rule(n, rng)
        else:
            raise ValueError(f"unknown instance kind {kind!r}")


_EXHAUSTIVE_LIMIT = 1_000_000


def _exhaustive_instances(
    kind: str, gen: InstanceGenerator, preorder: Preorder | None
) -> Iterator:
    n = preorder.n if preorder is not None else gen.bound("n", 2)
    if kind == "psi":
        count = n ** (1 << n)
        if count > _EXHAUSTIVE_LIMIT:
            raise CarrierTooLarge(count, _EXHAUSTIVE_LIMIT)
        for values in itertools.product(range(n), repeat=1 << n):
            yield PowersetMap(n, values)
    elif kind == "choice":
        pools = [bit_list(s) for s in range(1, 1 << n)]
        count = 1
        for p in pools:
            count *= len(p)
        if count > _EXHAUSTIVE_LIMIT:
            raise CarrierTooLarge(count, _EXHAUSTIVE_LIMIT)
        for values in itertools.product(*pools):
            yield ChoiceFunction.from_table(dict(zip(range(1, 1 << n), values)))
    elif kind == "inflationary":
        if preorder is None:
            raise ValueError("inflationary instances need a preorder")
        pools = [bit_list(preorder.up[x]) for x in range(preorder.n)]
        count = 1
        for p in pools:
            count *= len(p)
        if count > _EXHAUSTIVE_LIMIT:
            raise CarrierTooLarge(count, _EXHAUSTIVE_LIMIT)
        for values in itertools.product(*pools):
            yield InflationaryMap(values)
    else:
        raise ValueError(f"kind {kind!r} has no exhaustive stream")
