"""Small-universe index sets stored as int bitmasks.

Every ``ElementSet`` in this package is a plain ``int`` whose bit ``i`` is set
when element ``i`` belongs to the set.
"""

from __future__ import annotations

from typing import Iterable

ElementSet = int


def mask_of(items: Iterable[int] | int) -> ElementSet:
    if isinstance(items, int):
        return items
    m = 0
    for i in items:
        if i < 0:
            raise ValueError(f"negative element index {i}")
        m |= 1 << i
    return m


def members(m: ElementSet) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def popcount(m: ElementSet) -> int:
    return bin(m).count("1")


def is_subset(a: ElementSet, b: ElementSet) -> bool:
    return a & ~b == 0


def full_mask(n: int) -> ElementSet:
    return (1 << n) - 1


def set_key(m: ElementSet) -> tuple:
    """Deterministic ordering key: by size, then lexicographically by members."""
    return (popcount(m), members(m))


def fmt(m: ElementSet) -> str:
    return "{" + ",".join(str(i) for i in members(m)) + "}"
