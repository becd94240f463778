"""Subsets of a finite carrier as int bitmasks.

Bit i set means element i is a member.  Everything in this package that
takes or returns a "subset" speaks this encoding.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def bit_list(mask: int) -> list[int]:
    """Members of the subset in increasing index order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def has_bit(mask: int, i: int) -> bool:
    return bool((mask >> i) & 1)


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def full_mask(n: int) -> int:
    return (1 << n) - 1
