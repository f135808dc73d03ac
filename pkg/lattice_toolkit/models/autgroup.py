"""
Automorphism groups of finite lattices by individualisation-refinement
backtracking, rigidity, and a search for small rigid simple lattices.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import InvalidParameter, NotEnoughFound, SizeLimitExceeded
from lattice_toolkit.models.congruence import is_simple
from lattice_toolkit.models.enumeration import enumerate_lattices
from lattice_toolkit.models.lattice import FiniteLattice
from lattice_toolkit.utils.helpers import format_cycles

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
Pairs = Sequence[Tuple[int, int]]


def _initial_colours(lattice: FiniteLattice) -> List[Tuple[int, ...]]:
    return [
        (lattice.height(x), lattice.depth(x), len(lattice.upper_covers(x)), len(lattice.lower_covers(x)))
        for x in lattice.elements
    ]


def _refine(a: FiniteLattice, b: FiniteLattice, colours_a: List, colours_b: List) -> Tuple[np.ndarray, np.ndarray]:
    """
    Colour refinement on both Hasse diagrams with a shared palette.

    A colour is replaced by (colour, sorted upper-cover colours, sorted
    lower-cover colours) until the number of classes stops growing.
    """
    palette = {c: i for i, c in enumerate(sorted(set(colours_a) | set(colours_b)))}
    ca = np.array([palette[c] for c in colours_a], dtype=np.intp)
    cb = np.array([palette[c] for c in colours_b], dtype=np.intp)
    while True:
        signatures = []
        for lattice, colours in ((a, ca), (b, cb)):
            signatures.append([
                (int(colours[x]),
                 tuple(sorted(int(colours[y]) for y in lattice.upper_covers(x))),
                 tuple(sorted(int(colours[y]) for y in lattice.lower_covers(x))))
                for x in lattice.elements
            ])
        palette = {s: i for i, s in enumerate(sorted(set(signatures[0]) | set(signatures[1])))}
        new_a = np.array([palette[s] for s in signatures[0]], dtype=np.intp)
        new_b = np.array([palette[s] for s in signatures[1]], dtype=np.intp)
        if len(palette) == len(set(ca.tolist()) | set(cb.tolist())):
            return new_a, new_b
        ca, cb = new_a, new_b


def _same_histogram(ca: np.ndarray, cb: np.ndarray) -> bool:
    return Counter(ca.tolist()) == Counter(cb.tolist())


def _is_isomorphism(a: FiniteLattice, b: FiniteLattice, mapping: np.ndarray) -> bool:
    return bool((a.order == b.order[np.ix_(mapping, mapping)]).all())


def _search(a: FiniteLattice, b: FiniteLattice, ca: np.ndarray, cb: np.ndarray) -> Optional[np.ndarray]:
    if not _same_histogram(ca, cb):
        return None
    counts = Counter(ca.tolist())
    if all(c == 1 for c in counts.values()):
        position = {int(colour): y for y, colour in enumerate(cb.tolist())}
        mapping = np.array([position[int(c)] for c in ca], dtype=np.intp)
        return mapping if _is_isomorphism(a, b, mapping) else None
    # branch on the rarest non-singleton class
    target = min((c for c, k in counts.items() if k > 1), key=lambda c: (counts[c], c))
    x = int(np.flatnonzero(ca == target)[0])
    fresh = int(max(ca.max(), cb.max())) + 1
    for y in np.flatnonzero(cb == target).tolist():
        branch_a, branch_b = ca.copy(), cb.copy()
        branch_a[x] = fresh
        branch_b[y] = fresh
        refined_a, refined_b = _refine(a, b, list(branch_a.tolist()), list(branch_b.tolist()))
        found = _search(a, b, refined_a, refined_b)
        if found is not None:
            return found
    return None


def find_isomorphism(a: FiniteLattice, b: FiniteLattice, fixed: Pairs = ()) -> Optional[Perm]:
    """
    An order isomorphism a -> b, as a tuple mapping ids of a to ids of b.

    Args:
        a: Source lattice
        b: Target lattice
        fixed: (x, y) pairs the isomorphism must send x to y

    Returns:
        The first isomorphism found, or None
    """
    if a.size != b.size or len(a.covers) != len(b.covers):
        return None
    colours_a = _initial_colours(a)
    colours_b = _initial_colours(b)
    for k, (x, y) in enumerate(fixed):
        colours_a[x] = colours_b[y] = (-1 - k,)
    ca, cb = _refine(a, b, colours_a, colours_b)
    found = _search(a, b, ca, cb)
    return None if found is None else tuple(int(v) for v in found)


def _compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def _element_order(perm: Perm) -> int:
    lengths, seen = [], set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        lengths.append(length)
    return int(reduce(np.lcm, lengths, 1))


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generators and its order."""
    degree: int
    generators: Tuple[Perm, ...]
    order: int

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def elements(self, limit: int = 100_000) -> List[Perm]:
        """All group elements by closing the identity under the generators."""
        if self.order > limit:
            raise SizeLimitExceeded("group element listing", self.order, limit)
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            current = frontier.pop()
            for g in self.generators:
                product = _compose(g, current)
                if product not in found:
                    found.add(product)
                    frontier.append(product)
        return sorted(found)

    def element_order_profile(self, config: Optional[ToolkitConfig] = None) -> Dict[int, int]:
        """Number of elements of each order; only for small groups."""
        limit = get_config(config).ELEMENT_ORDER_LIMIT
        if self.order > limit:
            raise SizeLimitExceeded("element-order profile", self.order, limit)
        return dict(sorted(Counter(_element_order(g) for g in self.elements()).items()))

    def resembles(self, order: int, profile: Dict[int, int],
                  config: Optional[ToolkitConfig] = None) -> bool:
        """
        Heuristic match against an abstract group: same order and same
        element-order profile. Not an isomorphism test.
        """
        if order != self.order:
            return False
        return self.element_order_profile(config) == dict(sorted(profile.items()))

    def describe(self, labels: Sequence[str]) -> List[str]:
        return [format_cycles(g, labels) for g in self.generators]


def verify_automorphism(lattice: FiniteLattice, perm: Sequence[int]) -> bool:
    """True iff `perm` is a bijection preserving meet and join."""
    f = np.asarray(perm, dtype=np.intp)
    if sorted(f.tolist()) != list(lattice.elements):
        return False
    block = np.ix_(f, f)
    return bool((f[lattice.meet_table] == lattice.meet_table[block]).all()
                and (f[lattice.join_table] == lattice.join_table[block]).all())


def automorphisms(lattice: FiniteLattice, config: Optional[ToolkitConfig] = None) -> PermGroup:
    """
    Aut(L) through a stabiliser chain.

    At each level a point x of a non-trivial class is chosen; its orbit under
    the stabiliser of the points fixed so far is found by isomorphism search,
    one automorphism per orbit point becomes a generator, and x is fixed.
    The group order is the product of the orbit sizes.
    """
    limit = get_config(config).MAX_ELEMENTS
    if lattice.size > limit:
        raise SizeLimitExceeded("lattice size", lattice.size, limit)
    fixed: List[Tuple[int, int]] = []
    generators: List[Perm] = []
    order = 1
    while True:
        colours_a = _initial_colours(lattice)
        colours_b = list(colours_a)
        for k, (x, _) in enumerate(fixed):
            colours_a[x] = colours_b[x] = (-1 - k,)
        colours, _ = _refine(lattice, lattice, colours_a, colours_b)
        counts = Counter(colours.tolist())
        open_classes = [c for c, k in counts.items() if k > 1]
        if not open_classes:
            break
        target = min(open_classes, key=lambda c: (counts[c], c))
        members = np.flatnonzero(colours == target).tolist()
        x = members[0]
        orbit = 1
        for y in members[1:]:
            perm = find_isomorphism(lattice, lattice, fixed + [(x, y)])
            if perm is not None:
                orbit += 1
                generators.append(perm)
        order *= orbit
        fixed.append((x, x))
    logger.info("automorphism group of order %d with %d generators", order, len(generators))
    return PermGroup(lattice.size, tuple(sorted(set(generators))), order)


def is_rigid(lattice: FiniteLattice) -> bool:
    return automorphisms(lattice).order == 1


def find_rigid_simple(max_size: int, count: int,
                      config: Optional[ToolkitConfig] = None) -> List[FiniteLattice]:
    """
    Pairwise non-isomorphic rigid simple lattices, smallest first.

    Args:
        max_size: Largest number of elements searched
        count: How many lattices to return
        config: Supplies RIGID_SEARCH_MAX_SIZE

    Returns:
        `count` lattices, each rigid and simple
    """
    if count < 0:
        raise InvalidParameter(f"count must be nonnegative, got {count}")
    found: List[FiniteLattice] = []
    if count == 0:
        return found
    for size in range(2, max_size + 1):
        for lattice in enumerate_lattices(size, config):
            if is_simple(lattice) and is_rigid(lattice):
                found.append(lattice)
                if len(found) == count:
                    return found
    raise NotEnoughFound(len(found), count, max_size)
