"""
Utility functions for the finite lattice toolkit.
"""

from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np


def mask_from_bools(row: np.ndarray) -> int:
    """
    Pack a boolean vector into an integer bitset.

    Args:
        row: One-dimensional boolean array; entry i becomes bit i

    Returns:
        Integer whose set bits are the True positions of `row`
    """
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bools_from_mask(mask: int, size: int) -> np.ndarray:
    """
    Unpack an integer bitset into a boolean vector of length `size`.

    Args:
        mask: Integer bitset
        size: Number of positions to unpack

    Returns:
        Boolean array with True where `mask` has a set bit
    """
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of `mask` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    """Number of set bits."""
    return bin(mask).count("1")


def count_down_sets(order: np.ndarray) -> int:
    """
    Count the down-sets (order ideals, including the empty one) of a poset.

    Args:
        order: Square boolean matrix with order[x, y] True iff x <= y

    Returns:
        Number of down-closed subsets
    """
    n = len(order)
    below = [mask_from_bools(order[:, x]) for x in range(n)]
    above = [mask_from_bools(order[x, :]) for x in range(n)]

    @lru_cache(maxsize=None)
    def count(remaining: int) -> int:
        if not remaining:
            return 1
        # a maximal element m of the remaining set: no other remaining element above it
        for m in iter_bits(remaining):
            if above[m] & remaining == 1 << m:
                break
        # down-sets without m, plus down-sets that contain all of the remaining part of ↓m
        return count(remaining & ~(1 << m)) + count(remaining & ~below[m])

    return count((1 << n) - 1)


def set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """
    Enumerate all partitions of 0..n-1 as restricted growth strings.

    Args:
        n: Number of elements

    Returns:
        Iterator of tuples g with g[0] = 0 and g[i] <= 1 + max(g[:i]);
        g[i] is the block number of element i
    """
    if n == 0:
        yield ()
        return
    growth = [0] * n
    maxima = [0] * n

    def extend(i: int) -> Iterator[Tuple[int, ...]]:
        if i == n:
            yield tuple(growth)
            return
        for block in range(maxima[i - 1] + 2):
            growth[i] = block
            maxima[i] = max(maxima[i - 1], block)
            yield from extend(i + 1)

    yield from extend(1)


def format_blocks(blocks: Iterable[Sequence[int]], labels: Sequence[str],
                  include_singletons: bool = False) -> str:
    """
    Format a partition as ``{0,a,c}{b,1}``.

    Args:
        blocks: Blocks of element ids
        labels: Display label per element id
        include_singletons: Whether one-element blocks are printed

    Returns:
        The formatted partition, or ``Δ`` when nothing is collapsed
    """
    parts = [
        "{" + ",".join(labels[i] for i in block) + "}"
        for block in blocks
        if include_singletons or len(block) > 1
    ]
    return "".join(parts) if parts else "Δ"


def format_cycles(perm: Sequence[int], labels: Sequence[str]) -> str:
    """
    Format a permutation in cycle notation, omitting fixed points.

    Args:
        perm: One-line notation, perm[i] is the image of i
        labels: Display label per point

    Returns:
        String such as ``(a b c)(d e)``, or ``()`` for the identity
    """
    seen = set()
    cycles: List[str] = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append("(" + " ".join(labels[i] for i in cycle) + ")")
    return "".join(cycles) if cycles else "()"


def format_profile(counts: Sequence[int]) -> str:
    """Format a count triple as ``⟨a, b, c⟩``."""
    return "⟨" + ", ".join(str(c) for c in counts) + "⟩"
