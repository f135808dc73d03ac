"""
Disjoint-set forest used while closing partitions under lattice operations.
"""

from typing import Dict, List, Tuple


class UnionFind:
    """Union by size with path compression over the ids 0..n-1."""

    def __init__(self, n: int):
        self.parents: List[int] = list(range(n))
        self.sizes: List[int] = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parents[root] != root:
            root = self.parents[root]
        # compress
        while self.parents[v] != root:
            self.parents[v], v = root, self.parents[v]
        return root

    def union(self, v1: int, v2: int) -> bool:
        """Merge the classes of v1 and v2; return False if they already agree."""
        r1 = self.find(v1)
        r2 = self.find(v2)
        if r1 == r2:
            return False
        if self.sizes[r1] < self.sizes[r2]:
            r1, r2 = r2, r1
        self.parents[r2] = r1
        self.sizes[r1] += self.sizes[r2]
        return True

    def same(self, v1: int, v2: int) -> bool:
        return self.find(v1) == self.find(v2)

    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """Classes as sorted tuples, ordered by least member."""
        groups: Dict[int, List[int]] = {}
        for v in range(len(self.parents)):
            groups.setdefault(self.find(v), []).append(v)
        return tuple(sorted(tuple(g) for g in groups.values()))
