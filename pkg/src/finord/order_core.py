"""Finite preorders and their order-theoretic vocabulary.

A preorder is a reflexive, transitive boolean relation over a carrier
0..n-1, stored as per-element up-set bitmasks.  Subsets are int bitmasks
(see bitsets).  All values are immutable and every operation is a pure
function, so instances are safe to share across threads.

Conventions used throughout the package:

* ``x < y`` (strictly less) means ``x <= y and not y <= x``.  The choice
  keeps segments and maximality well-behaved when distinct elements are
  equivalent (``x <= y <= x``).
* "least upper bound exists" means the set of least upper bounds is
  non-empty; ``canonical_sup`` deterministically picks the least-index
  member because in a non-antisymmetric preorder lubs are only unique up
  to equivalence.
* a subset is well-ordered iff its induced order is total and
  antisymmetric, which on finite carriers coincides with every non-empty
  subset having a unique least element.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .bitsets import bit_list, full_mask, has_bit, iter_bits
from .config import DEFAULT_BOUNDS, Bounds
from .errors import CarrierTooLarge, NotReflexive, NotTransitive


@dataclass(frozen=True)
class Preorder:
    """Reflexive-transitive relation on 0..n-1.

    ``up[i]`` is the bitmask of elements j with i <= j.  ``down`` is the
    transposed view, derived at construction.
    """

    n: int
    up: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    down: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        down = [0] * self.n
        for i in range(self.n):
            for j in iter_bits(self.up[i]):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def equivalent(self, i: int, j: int) -> bool:
        return self.leq(i, j) and self.leq(j, i)

    @property
    def carrier(self) -> int:
        return full_mask(self.n)

    def is_antisymmetric(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(self.n))

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(self.n)] for i in range(self.n)]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)


@dataclass(frozen=True)
class Chain:
    """Ordered sequence of distinct carrier elements.

    The sequence order is the intended well-ordering; whether it agrees
    with a surrounding preorder is asserted separately
    (is_well_ordered_subset).
    """

    seq: tuple[int, ...] = ()

    def __post_init__(self):
        if len(set(self.seq)) != len(self.seq):
            raise ValueError(f"chain has repeated elements: {self.seq}")

    @property
    def bits(self) -> int:
        m = 0
        for x in self.seq:
            m |= 1 << x
        return m

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def __getitem__(self, i):
        return self.seq[i]

    def is_prefix_of(self, other: "Chain") -> bool:
        return self.seq == other.seq[: len(self.seq)]

    def prefix(self, k: int) -> "Chain":
        return Chain(self.seq[:k])


def _closure(rows: list[int], n: int) -> list[int]:
    # Warshall specialized to bitmask rows
    for i in range(n):
        rows[i] |= 1 << i
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return rows


def validate_preorder(
    rel: Sequence[Sequence[int | bool]],
    *,
    closure: bool = False,
    labels: Sequence[str] | None = None,
) -> Preorder:
    """Check a raw square matrix and wrap it as a Preorder.

    With ``closure=True`` the reflexive-transitive closure is applied
    first, so any square matrix validates.  Otherwise reflexivity and
    transitivity violations raise NotReflexive(i) / NotTransitive(i,j,k)
    with the offending witnesses.
    """
    n = len(rel)
    rows: list[int] = []
    for i, row in enumerate(rel):
        if len(row) != n:
            raise ValueError(f"relation matrix is not square: row {i} has length {len(row)}")
        rows.append(sum(1 << j for j, v in enumerate(row) if v))
    if closure:
        rows = _closure(rows, n)
    for i in range(n):
        if not has_bit(rows[i], i):
            raise NotReflexive(i)
    for i in range(n):
        for j in iter_bits(rows[i]):
            missing = rows[j] & ~rows[i]
            if missing:
                k = bit_list(missing)[0]
                raise NotTransitive(i, j, k)
    return Preorder(n, tuple(rows), tuple(labels) if labels is not None else None)


def strictly_less(P: Preorder, x: int, y: int) -> bool:
    return P.leq(x, y) and not P.leq(y, x)


def strict_up(P: Preorder, x: int) -> int:
    """{y | x < y} as a bitmask."""
    return P.up[x] & ~P.down[x]


def strict_down(P: Preorder, x: int) -> int:
    """{y | y < x} as a bitmask."""
    return P.down[x] & ~P.up[x]


def is_segment(P: Preorder, subset: int) -> bool:
    """True iff the subset is downward closed under the strict order."""
    for x in iter_bits(subset):
        if strict_down(P, x) & ~subset:
            return False
    return True


def initial_segment(P: Preorder, a: int) -> int:
    """Everything strictly below ``a``."""
    return strict_down(P, a)


def is_well_ordered_subset(P: Preorder, subset: int) -> Chain | None:
    """The unique increasing listing of the subset, or None.

    Present iff the induced relation is total and antisymmetric; the
    empty subset yields the empty chain.
    """
    members = bit_list(subset)
    for x in members:
        if subset & ~(P.up[x] | P.down[x]):
            return None
        if P.up[x] & P.down[x] & subset != 1 << x:
            return None
    members.sort(key=lambda x: (P.down[x] & subset).bit_count())
    return Chain(tuple(members))


def upper_bounds(P: Preorder, subset: int) -> int:
    ub = P.carrier
    for a in iter_bits(subset):
        ub &= P.up[a]
    return ub


def least_upper_bounds(P: Preorder, subset: int) -> int:
    ub = upper_bounds(P, subset)
    out = 0
    for m in iter_bits(ub):
        if not ub & ~P.up[m]:
            out |= 1 << m
    return out


def canonical_sup(P: Preorder, subset: int) -> int | None:
    """Least-index least upper bound; the deterministic sup used everywhere."""
    lubs = least_upper_bounds(P, subset)
    if lubs == 0:
        return None
    return (lubs & -lubs).bit_length() - 1


def maximal_elements(P: Preorder) -> int:
    out = 0
    for m in range(P.n):
        if strict_up(P, m) == 0:
            out |= 1 << m
    return out


def least_element(P: Preorder, subset: int) -> int | None:
    """The unique member below all others, or None if absent or tied."""
    if subset == 0:
        raise ValueError("least_element requires a non-empty subset")
    candidates = [x for x in iter_bits(subset) if not subset & ~P.up[x]]
    if len(candidates) != 1:
        return None
    return candidates[0]


def iter_totally_ordered_subsets(P: Preorder) -> Iterator[int]:
    """All subsets whose members are pairwise comparable, the empty one first.

    Enumeration is a DFS that only ever visits comparable extensions, so
    tree-shaped orders stay cheap even when 2^n does not.
    """
    comp = [P.up[i] | P.down[i] for i in range(P.n)]
    n = P.n

    def extend(mask: int, start: int) -> Iterator[int]:
        for j in range(start, n):
            if mask & ~comp[j]:
                continue
            grown = mask | (1 << j)
            yield grown
            yield from extend(grown, j + 1)

    yield 0
    yield from extend(0, 0)


def is_inductive(P: Preorder, *, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """True iff every totally ordered subset (including the empty one)
    has an upper bound.  Exponential in the worst case; capped."""
    if P.n > bounds.inductive_cap:
        raise CarrierTooLarge(P.n, bounds.inductive_cap)
    for mask in iter_totally_ordered_subsets(P):
        if upper_bounds(P, mask) == 0:
            return False
    return True


def restrict(P: Preorder, subset: int) -> tuple[Preorder, tuple[int, ...]]:
    """Sub-preorder induced on the subset, plus the new-to-old index map."""
    members = tuple(bit_list(subset))
    pos = {x: i for i, x in enumerate(members)}
    rows = []
    for x in members:
        row = 0
        for y in iter_bits(P.up[x] & subset):
            row |= 1 << pos[y]
        rows.append(row)
    labels = tuple(P.label(x) for x in members) if P.labels else None
    return Preorder(len(members), tuple(rows), labels), members
