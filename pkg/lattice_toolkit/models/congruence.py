"""
Congruences of finite lattices: principal congruence closure, the full
congruence lattice, principal congruences, simplicity, quotients and
restriction to sublattices.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import InvalidParameter, SizeLimitExceeded
from lattice_toolkit.models.ideal_filter import filters, ideals
from lattice_toolkit.models.lattice import CfiProfile, FiniteLattice, FinitePoset
from lattice_toolkit.utils.helpers import count_down_sets, format_blocks, set_partitions
from lattice_toolkit.utils.union_find import UnionFind

logger = logging.getLogger(__name__)

Blocks = Tuple[Tuple[int, ...], ...]


def _canonical_blocks(block_index: Sequence[int]) -> Blocks:
    groups: Dict[int, List[int]] = {}
    for x, b in enumerate(block_index):
        groups.setdefault(int(b), []).append(x)
    # elements are visited in increasing order, so blocks come out sorted by least member
    return tuple(tuple(members) for members in groups.values())


@dataclass(frozen=True)
class Congruence:
    """A partition of a lattice's elements compatible with meet and join."""
    lattice: FiniteLattice = field(compare=False, repr=False)
    blocks: Blocks

    @classmethod
    def from_block_index(cls, lattice: FiniteLattice, block_index: Sequence[int]) -> "Congruence":
        return cls(lattice, _canonical_blocks(block_index))

    @classmethod
    def from_union_find(cls, lattice: FiniteLattice, uf: UnionFind) -> "Congruence":
        return cls(lattice, uf.blocks())

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, tuple((x,) for x in lattice.elements))

    @classmethod
    def total(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, (tuple(lattice.elements),))

    @cached_property
    def block_index(self) -> np.ndarray:
        index = np.empty(sum(len(b) for b in self.blocks), dtype=np.intp)
        for i, block in enumerate(self.blocks):
            index[list(block)] = i
        index.setflags(write=False)
        return index

    @cached_property
    def representatives(self) -> np.ndarray:
        """Least member of the block of each element."""
        firsts = np.array([block[0] for block in self.blocks], dtype=np.intp)
        return firsts[self.block_index]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @property
    def is_total(self) -> bool:
        return len(self.blocks) <= 1

    def contains(self, x: int, y: int) -> bool:
        return bool(self.block_index[x] == self.block_index[y])

    def block_of(self, x: int) -> Tuple[int, ...]:
        return self.blocks[int(self.block_index[x])]

    def non_singleton_blocks(self) -> Blocks:
        return tuple(b for b in self.blocks if len(b) > 1)

    def __le__(self, other: "Congruence") -> bool:
        return bool((other.block_index == other.block_index[self.representatives]).all())

    def __lt__(self, other: "Congruence") -> bool:
        return self != other and self <= other

    def meet(self, other: "Congruence") -> "Congruence":
        """Intersection of the two partitions."""
        pairs = self.block_index * len(other.blocks) + other.block_index
        return Congruence.from_block_index(self.lattice, pairs)

    def join(self, other: "Congruence") -> "Congruence":
        """Smallest congruence containing both."""
        uf = UnionFind(self.lattice.size)
        for block in self.blocks + other.blocks:
            for y in block[1:]:
                uf.union(block[0], y)
        joined = Congruence.from_union_find(self.lattice, uf)
        if not is_compatible(self.lattice, joined.block_index):
            logger.warning("equivalence join is not compatible, closing it")
            pending = [(b[0], y) for b in joined.blocks for y in b[1:]]
            joined = Congruence.from_union_find(self.lattice, _close(self.lattice, uf, pending))
        return joined

    def describe(self, include_singletons: bool = False) -> str:
        return format_blocks(self.blocks, self.lattice.labels, include_singletons)

    def __str__(self) -> str:
        return self.describe()


def is_compatible(lattice: FiniteLattice, block_index: Sequence[int]) -> bool:
    """
    Check that a partition, given by block numbers, respects meet and join.

    Args:
        lattice: The lattice whose elements are partitioned
        block_index: Block number per element id

    Returns:
        True iff x ≡ y implies x∧z ≡ y∧z and x∨z ≡ y∨z for every z
    """
    b = np.asarray(block_index)
    _, first, inverse = np.unique(b, return_index=True, return_inverse=True)
    rep = first[inverse.reshape(-1)]
    for table in (lattice.meet_table, lattice.join_table):
        translated = b[table]  # block of x∘z, row x
        if not (translated == translated[rep]).all():
            return False
    return True


def _close(lattice: FiniteLattice, uf: UnionFind, pending: List[Tuple[int, int]],
           stop: Optional[Tuple[int, int]] = None) -> UnionFind:
    """
    Worklist closure: translate every newly merged pair by meets and joins.

    With `stop` given, return as soon as that pair shares a class; the
    partition is then only partly closed.
    """
    tables = (lattice.meet_table, lattice.join_table)
    while pending:
        x, y = pending.pop()
        for table in tables:
            row_x, row_y = table[x], table[y]
            for z in np.flatnonzero(row_x != row_y).tolist():
                u, v = int(row_x[z]), int(row_y[z])
                if uf.union(u, v):
                    if stop is not None and uf.same(*stop):
                        return uf
                    pending.append((u, v))
    return uf


def principal(lattice: FiniteLattice, a: int, b: int) -> Congruence:
    """The least congruence collapsing a and b."""
    uf = UnionFind(lattice.size)
    pending = [(a, b)] if uf.union(a, b) else []
    return Congruence.from_union_find(lattice, _close(lattice, uf, pending))


def perspectivity_classes(lattice: FiniteLattice) -> List[List[Tuple[int, int]]]:
    """
    Covers grouped by the transitive closure of perspectivity.

    a ≺ b and c ≺ d are perspective when c ∧ b = a and c ∨ b = d. Perspective
    intervals generate the same principal congruence, so one closure per
    class is enough. Classes and their members keep cover order.
    """
    covers = lattice.covers
    position = {cover: i for i, cover in enumerate(covers)}
    uf = UnionFind(len(covers))
    for i, (a, b) in enumerate(covers):
        cs = np.flatnonzero(lattice.meet_table[b] == a)
        ds = lattice.join_table[b, cs]
        for c, d in zip(cs.tolist(), ds.tolist()):
            if c != a and lattice.cover_matrix[c, d]:
                uf.union(i, position[(c, d)])
    return [[covers[i] for i in block] for block in uf.blocks()]


def prime_interval_congruences(lattice: FiniteLattice) -> Tuple[Congruence, ...]:
    """Distinct congruences generated by cover pairs, in lexicographic block order."""
    classes = perspectivity_classes(lattice)
    logger.debug("%d covers in %d perspectivity classes", len(lattice.covers), len(classes))
    found = {principal(lattice, *members[0]) for members in classes}
    return tuple(sorted(found, key=lambda theta: theta.blocks))


def _order_matrix(congruences: Sequence[Congruence]) -> np.ndarray:
    if not congruences:
        return np.zeros((0, 0), dtype=bool)
    index = np.stack([theta.block_index for theta in congruences])
    reps = np.stack([theta.representatives for theta in congruences])
    order = np.empty((len(congruences), len(congruences)), dtype=bool)
    for i in range(len(congruences)):
        order[i] = (index == index[:, reps[i]]).all(axis=1)
    return order


@dataclass(frozen=True, eq=False)
class CongruenceFamily:
    """A set of congruences of one lattice with their inclusion order."""
    source: FiniteLattice
    congruences: Tuple[Congruence, ...]
    order: np.ndarray  # order[i, j] iff congruences[i] <= congruences[j]

    @classmethod
    def of(cls, source: FiniteLattice, congruences: Iterable[Congruence]):
        ordered = tuple(sorted(set(congruences), key=lambda theta: theta.blocks))
        order = _order_matrix(ordered)
        order.setflags(write=False)
        return cls(source, ordered, order)

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self) -> Iterator[Congruence]:
        return iter(self.congruences)

    def __contains__(self, theta: Congruence) -> bool:
        return theta in self._positions

    @cached_property
    def _positions(self) -> Dict[Congruence, int]:
        return {theta: i for i, theta in enumerate(self.congruences)}

    def index(self, theta: Congruence) -> int:
        return self._positions[theta]

    @cached_property
    def poset(self) -> FinitePoset:
        return FinitePoset(tuple(theta.describe() for theta in self.congruences), self.order)

    def is_chain(self) -> bool:
        return self.poset.is_chain()


class ConLattice(CongruenceFamily):
    """All congruences of a lattice; the order is a distributive lattice."""

    @cached_property
    def lattice(self) -> FiniteLattice:
        return FiniteLattice.from_order(self.poset.labels, self.order)

    @property
    def bottom(self) -> Congruence:
        return next(theta for theta in self.congruences if theta.is_identity)

    @property
    def top(self) -> Congruence:
        return next(theta for theta in self.congruences if theta.is_total)


def all_congruences(lattice: FiniteLattice, config: Optional[ToolkitConfig] = None) -> ConLattice:
    """
    Every congruence of a finite lattice.

    Every congruence is the join of the prime-interval congruences below it, so
    a breadth-first closure of Δ under joins with those generators reaches all
    of Con(L).

    Args:
        lattice: Lattice to analyse
        config: Supplies the MAX_CONGRUENCES cap

    Returns:
        ConLattice ordered lexicographically on canonical block form
    """
    cap = get_config(config).MAX_CONGRUENCES
    generators = prime_interval_congruences(lattice)
    logger.info("%d prime-interval generators on %d elements", len(generators), lattice.size)
    bottom = Congruence.identity(lattice)
    found = {bottom}
    queue = deque([bottom])
    while queue:
        theta = queue.popleft()
        for generator in generators:
            if generator <= theta:
                continue
            joined = theta.join(generator)
            if joined not in found:
                found.add(joined)
                if len(found) > cap:
                    raise SizeLimitExceeded("congruence count", len(found), cap)
                queue.append(joined)
    logger.info("found %d congruences", len(found))
    return ConLattice.of(lattice, found)


def congruence_count(lattice: FiniteLattice) -> int:
    """
    |Con(L)| without enumerating Con(L): the number of down-sets of the poset
    of prime-interval congruences, which are the join-irreducibles of the
    distributive lattice Con(L).
    """
    generators = prime_interval_congruences(lattice)
    return count_down_sets(_order_matrix(generators))


def brute_force_congruences(lattice: FiniteLattice,
                            config: Optional[ToolkitConfig] = None) -> List[Congruence]:
    """Oracle: every partition of the elements that happens to be compatible."""
    limit = get_config(config).ORACLE_MAX_ELEMENTS
    if lattice.size > limit:
        raise SizeLimitExceeded("partition oracle", lattice.size, limit)
    return [
        Congruence.from_block_index(lattice, growth)
        for growth in set_partitions(lattice.size)
        if is_compatible(lattice, growth)
    ]


def princ_poset(lattice: FiniteLattice) -> CongruenceFamily:
    """{cg(a, b) : a <= b} ordered by inclusion."""
    found = {Congruence.identity(lattice)}
    lows, highs = np.nonzero(lattice.order)
    for a, b in zip(lows.tolist(), highs.tolist()):
        if a != b:
            found.add(principal(lattice, a, b))
    return CongruenceFamily.of(lattice, found)


def is_simple(lattice: FiniteLattice) -> bool:
    """Exactly two congruences: at least two elements and every prime interval generates ∇."""
    if lattice.size < 2:
        return False
    ends = (lattice.bottom, lattice.top)
    for members in perspectivity_classes(lattice):
        a, b = members[0]
        uf = UnionFind(lattice.size)
        uf.union(a, b)
        if not _close(lattice, uf, [(a, b)], stop=ends).same(*ends):
            return False
    return True


def quotient(lattice: FiniteLattice, theta: Congruence) -> FiniteLattice:
    """The lattice of θ-blocks; [x] <= [y] iff x∧y ≡ x."""
    if len(theta.block_index) != lattice.size:
        raise InvalidParameter("congruence and lattice have different sizes")
    reps = np.array([block[0] for block in theta.blocks], dtype=np.intp)
    meets = theta.block_index[lattice.meet_table[np.ix_(reps, reps)]]
    order = meets == np.arange(len(reps))[:, None]
    labels = ["{" + ",".join(lattice.labels[x] for x in block) + "}" for block in theta.blocks]
    return FiniteLattice.from_order(labels, order)


def restrict_map(lattice: FiniteLattice, sub_elements: Iterable[int], theta: Congruence,
                 sublattice: Optional[FiniteLattice] = None) -> Congruence:
    """
    θ ∩ (S × S) as a congruence of the sublattice S.

    Args:
        lattice: Ambient lattice
        sub_elements: Element ids of S; must be closed under meet and join
        theta: Congruence of the ambient lattice
        sublattice: Pre-built `lattice.sublattice(sub_elements)` to reuse

    Returns:
        Congruence on S, whose ids follow the increasing order of `sub_elements`
    """
    ids = sorted(set(int(i) for i in sub_elements))
    if sublattice is None:
        sublattice = lattice.sublattice(ids)
    return Congruence.from_block_index(sublattice, theta.block_index[ids])


def join_irreducible_congruences(lattice: FiniteLattice) -> Tuple[Congruence, ...]:
    """J(Con(L)): exactly the congruences generated by prime intervals."""
    return prime_interval_congruences(lattice)


def cfi_profile(lattice: FiniteLattice) -> CfiProfile:
    """⟨|Con(L)|, |Filt(L)|, |Id(L)|⟩."""
    return CfiProfile(
        con_count=congruence_count(lattice),
        filt_count=len(filters(lattice)),
        id_count=len(ideals(lattice)),
    )
