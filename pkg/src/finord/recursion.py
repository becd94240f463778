"""Greedy transfinite-style recursion, truncated to finite carriers.

Given a family of subsets (a membership predicate) and a step map that
assigns each accepted subset a fresh element, there is exactly one chain
whose prefixes are all accepted, whose next element is always the step
map's pick, and whose full element set falls outside the family.
``construct_tb_chain`` builds it; ``verify_tb_conditions`` checks any
candidate against the same two conditions; the uniqueness claim is
validated by the oracle module's exhaustive filter.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from .bitsets import has_bit
from .certificates import Check
from .errors import DomainError, FinordError, NotPrefixCompatible, PhiViolation
from .order_core import Chain


@dataclass(frozen=True)
class StepRule:
    """A membership predicate over subsets plus the step map on accepted ones.

    ``domain`` decides subset membership in the family; ``phi`` names the
    element appended when a subset is accepted.  Both take subset
    bitmasks.  Table-backed rules are validated eagerly (phi must pick a
    non-member); callable rules are validated at each visited subset.
    Callables must be referentially transparent: same subset, same answer.
    """

    domain: Callable[[int], bool]
    phi: Callable[[int], int]
    table: tuple[tuple[int, int], ...] | None = None
    name: str = "rule"

    @classmethod
    def from_table(
        cls, entries: Mapping[int, int] | Iterable[tuple[int, int]], name: str = "table"
    ) -> "StepRule":
        mapping = dict(entries)
        for subset, value in mapping.items():
            if has_bit(subset, value):
                raise PhiViolation(subset)
        return cls(
            domain=mapping.__contains__,
            phi=mapping.__getitem__,
            table=tuple(sorted(mapping.items())),
            name=name,
        )

    @classmethod
    def from_rule(
        cls, domain: Callable[[int], bool], phi: Callable[[int], int], name: str = "rule"
    ) -> "StepRule":
        return cls(domain=domain, phi=phi, table=None, name=name)

    def to_payload(self) -> dict:
        if self.table is None:
            raise ValueError("only table-backed rules serialize")
        return {
            "domain": [s for s, _ in self.table],
            "map": [[s, v] for s, v in self.table],
        }


@dataclass(frozen=True)
class TBWitness:
    """Constructed chain plus the evidence for the two defining conditions.

    checks always contain: per-position condition1 entries (prefix
    accepted and phi(prefix) equals the element), the terminal condition2
    (the full element set is rejected), and the non-empty-start remark
    (a non-empty chain forces the empty set to be accepted).
    """

    chain: Chain
    step_log: tuple[tuple[int, int], ...]
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _ask_domain(rule: StepRule, subset: int) -> bool:
    try:
        return bool(rule.domain(subset))
    except FinordError:
        raise
    except Exception as exc:  # a broken user-supplied oracle
        raise DomainError(subset, repr(exc)) from exc


def _ask_phi(rule: StepRule, n: int, subset: int) -> int:
    try:
        value = rule.phi(subset)
    except FinordError:
        raise
    except Exception as exc:
        raise DomainError(subset, repr(exc)) from exc
    if not isinstance(value, int) or not 0 <= value < n:
        raise DomainError(subset, f"step map returned {value!r}")
    return value


def construct_tb_chain(n: int, rule: StepRule) -> TBWitness:
    """Run the greedy recursion from the empty set.

    Terminates within n appends: every accepted subset gets a fresh
    element, so the working set strictly grows.  The returned witness has
    every check re-evaluated against the rule.
    """
    seq: list[int] = []
    log: list[tuple[int, int]] = []
    bits = 0
    while _ask_domain(rule, bits):
        x = _ask_phi(rule, n, bits)
        if has_bit(bits, x):
            raise PhiViolation(bits)
        log.append((bits, x))
        seq.append(x)
        bits |= 1 << x

    chain = Chain(tuple(seq))
    checks = []
    prefix = 0
    for i, x in enumerate(chain):
        ok = _ask_domain(rule, prefix) and _ask_phi(rule, n, prefix) == x
        checks.append(Check(f"condition1[{i}]", ok))
        prefix |= 1 << x
    checks.append(Check("condition2", not _ask_domain(rule, bits)))
    checks.append(Check("remark-empty-start", len(chain) == 0 or _ask_domain(rule, 0)))
    return TBWitness(chain, tuple(log), tuple(checks))


def verify_tb_conditions(n: int, rule: StepRule, candidate: Chain) -> bool:
    """Does the candidate satisfy both defining conditions for this rule?"""
    bits = 0
    for x in candidate:
        if not 0 <= x < n:
            return False
        if not _ask_domain(rule, bits):
            return False
        if _ask_phi(rule, n, bits) != x:
            return False
        bits |= 1 << x
    return not _ask_domain(rule, bits)


def merge_chains(family: Sequence[Chain]) -> Chain:
    """Union of a family of pairwise prefix-compatible chains.

    The result is the longest member; every input chain is a prefix of
    it.  Raises NotPrefixCompatible(i, j) naming a violating pair.
    Prefix-of is transitive, so checking length-sorted neighbours covers
    every pair.
    """
    order = sorted(range(len(family)), key=lambda i: len(family[i]))
    for a, b in zip(order, order[1:]):
        if not family[a].is_prefix_of(family[b]):
            i, j = sorted((a, b))
            raise NotPrefixCompatible(i, j)
    return family[order[-1]] if family else Chain(())
