"""Exception types raised across the package.

Messages render as ``Name(arg,arg,...)`` so a failing CLI run can name the
violating element, pair, or subset verbatim.
"""

from __future__ import annotations


class FinordError(Exception):
    """Base class for all package errors."""


class NotReflexive(FinordError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"NotReflexive({i})")


class NotTransitive(FinordError):
    def __init__(self, i: int, j: int, k: int):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"NotTransitive({i},{j},{k})")


class CarrierTooLarge(FinordError):
    def __init__(self, size: int, cap: int):
        self.size, self.cap = size, cap
        super().__init__(f"CarrierTooLarge(size={size},cap={cap})")


class PhiViolation(FinordError):
    """The step map returned a member of its own argument."""

    def __init__(self, subset: int):
        self.subset = subset
        super().__init__(f"PhiViolation(subset={subset})")


class DomainError(FinordError):
    """A membership oracle or rule failed on a queried subset."""

    def __init__(self, subset: int, reason: str = ""):
        self.subset = subset
        note = f",{reason}" if reason else ""
        super().__init__(f"DomainError(subset={subset}{note})")


class NotPrefixCompatible(FinordError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"NotPrefixCompatible({i},{j})")


class HypothesisFailed(FinordError):
    """A well-ordered subset without the bound the theorem requires."""

    def __init__(self, chain):
        self.chain = chain
        super().__init__(f"HypothesisFailed(chain={list(chain)})")


class NotInductive(FinordError):
    def __init__(self):
        super().__init__("NotInductive()")


class NotUnionClosed(FinordError):
    def __init__(self, subfamily: tuple[int, ...]):
        self.subfamily = subfamily
        super().__init__(f"NotUnionClosed(members={list(subfamily)})")


class NotInflationary(FinordError):
    def __init__(self, x: int):
        self.x = x
        super().__init__(f"NotInflationary({x})")


class UniquenessViolated(FinordError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"UniquenessViolated(count={count})")


class TableIncomplete(FinordError):
    """A table-backed map was queried outside its entries."""

    def __init__(self, subset: int):
        self.subset = subset
        super().__init__(f"TableIncomplete(subset={subset})")


class InstanceError(FinordError):
    """An instance file failed structural validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"InstanceError(field={field!r}): {message}")
