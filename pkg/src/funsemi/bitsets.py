"""Small helpers for subsets of ``range(n)`` stored as int bitmasks."""

from typing import Iterable, List


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def braces(mask: int) -> str:
    """Brace notation, e.g. ``{0,2}``."""
    return "{" + ",".join(str(i) for i in members(mask)) + "}"
