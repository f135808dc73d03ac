"""
Finite lattice representation: validation of cover relations, synthesis of the
order bit-matrix and of the meet/join tables, duality, intervals and stock
lattices.
"""

import logging
import string
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Type

import networkx as nx
import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import (
    CycleDetected,
    InvalidParameter,
    JoinUndefined,
    MalformedInput,
    MeetUndefined,
    NoBoundsError,
    NotASublattice,
    NotComparable,
    NotTransitivelyReduced,
    SizeLimitExceeded,
    _PairError,
)
from lattice_toolkit.utils.helpers import count_down_sets, format_profile

logger = logging.getLogger(__name__)

Cover = Tuple[int, int]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _cover_matrix(order: np.ndarray) -> np.ndarray:
    """x ≺ y iff x < y and nothing lies strictly between them."""
    strict = order.copy()
    np.fill_diagonal(strict, False)
    s = strict.astype(np.int32)
    return strict & ~((s @ s) > 0)


@dataclass(frozen=True)
class CfiProfile:
    """Counts of congruences, filters and ideals of a finite lattice."""
    con_count: int
    filt_count: int
    id_count: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.con_count, self.filt_count, self.id_count)

    def __str__(self) -> str:
        return format_profile(self.as_tuple())


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """A finite ordered set given by display labels and an order bit-matrix."""
    labels: Tuple[str, ...]
    order: np.ndarray  # order[x, y] iff x <= y

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def leq(self, x: int, y: int) -> bool:
        return bool(self.order[x, y])

    def label(self, x: int) -> str:
        return self.labels[x]

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        """Element id of a display label."""
        try:
            return self._positions[str(label)]
        except KeyError:
            raise MalformedInput(f"unknown element {label!r}") from None

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        return _frozen(_cover_matrix(self.order))

    @cached_property
    def covers(self) -> Tuple[Cover, ...]:
        lows, highs = np.nonzero(self.cover_matrix)
        return tuple(sorted(zip(lows.tolist(), highs.tolist())))

    @cached_property
    def _lower_covers(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(self.cover_matrix[:, x]).tolist()) for x in self.elements)

    @cached_property
    def _upper_covers(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(self.cover_matrix[x]).tolist()) for x in self.elements)

    def lower_covers(self, x: int) -> Tuple[int, ...]:
        return self._lower_covers[x]

    def upper_covers(self, x: int) -> Tuple[int, ...]:
        return self._upper_covers[x]

    @cached_property
    def _linear_extension(self) -> List[int]:
        # |↓x| strictly grows along the order
        return sorted(self.elements, key=lambda x: (int(self.order[:, x].sum()), x))

    @cached_property
    def heights(self) -> np.ndarray:
        """Length of the longest chain from a minimal element up to each element."""
        h = np.zeros(self.size, dtype=np.intp)
        for x in self._linear_extension:
            below = self._lower_covers[x]
            if below:
                h[x] = h[list(below)].max() + 1
        return _frozen(h)

    @cached_property
    def depths(self) -> np.ndarray:
        """Length of the longest chain from each element up to a maximal element."""
        d = np.zeros(self.size, dtype=np.intp)
        for x in reversed(self._linear_extension):
            above = self._upper_covers[x]
            if above:
                d[x] = d[list(above)].max() + 1
        return _frozen(d)

    def height(self, x: int) -> int:
        return int(self.heights[x])

    def depth(self, x: int) -> int:
        return int(self.depths[x])

    @property
    def length(self) -> int:
        return int(self.heights.max()) if self.size else 0

    def is_chain(self) -> bool:
        return bool((self.order | self.order.T).all())

    def count_down_sets(self) -> int:
        """Number of down-sets, the empty one included."""
        return count_down_sets(self.order)

    def subposet(self, ids: Iterable[int]) -> "FinitePoset":
        ids = sorted(set(int(i) for i in ids))
        return FinitePoset(
            labels=tuple(self.labels[i] for i in ids),
            order=_frozen(self.order[np.ix_(ids, ids)].copy()),
        )

    def hasse_graph(self) -> nx.DiGraph:
        """Cover digraph with edges drawn from lower to upper element."""
        graph = nx.DiGraph()
        for x in self.elements:
            graph.add_node(x, label=self.labels[x], height=self.height(x))
        graph.add_edges_from(self.covers)
        return graph

    def is_isomorphic(self, other: "FinitePoset") -> bool:
        """Order isomorphism, decided on the Hasse diagrams."""
        if self.size != other.size or len(self.covers) != len(other.covers):
            return False
        return nx.is_isomorphic(self.hasse_graph(), other.hasse_graph())


@dataclass(frozen=True, eq=False)
class FiniteLattice(FinitePoset):
    """A finite lattice with materialised order, meet and join tables."""
    meet_table: np.ndarray
    join_table: np.ndarray
    bottom: int
    top: int

    @classmethod
    def from_order(cls, labels: Sequence[str], order: np.ndarray,
                   config: Optional[ToolkitConfig] = None) -> "FiniteLattice":
        """Build a lattice from a complete order matrix."""
        labels = tuple(str(label) for label in labels)
        _check_size(len(labels), config)
        order = np.asarray(order, dtype=bool).copy()
        meet = _bound_table(order, labels, MeetUndefined)
        join = _bound_table(order.T, labels, JoinUndefined)
        return _assemble(labels, order, meet, join)

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet_all(self, ids: Iterable[int]) -> int:
        result = self.top
        for x in ids:
            result = self.meet_table[result, x]
        return int(result)

    def join_all(self, ids: Iterable[int]) -> int:
        result = self.bottom
        for x in ids:
            result = self.join_table[result, x]
        return int(result)

    @property
    def atoms(self) -> Tuple[int, ...]:
        return self.upper_covers(self.bottom) if self.size > 1 else ()

    @property
    def coatoms(self) -> Tuple[int, ...]:
        return self.lower_covers(self.top) if self.size > 1 else ()

    def dual(self) -> "FiniteLattice":
        """The same elements with the order reversed."""
        return _assemble(
            self.labels,
            self.order.T.copy(),
            self.join_table.copy(),
            self.meet_table.copy(),
        )

    def is_sublattice(self, ids: Iterable[int]) -> bool:
        ids = np.array(sorted(set(int(i) for i in ids)), dtype=np.intp)
        if ids.size == 0:
            return False
        inside = np.zeros(self.size, dtype=bool)
        inside[ids] = True
        block = np.ix_(ids, ids)
        return bool(inside[self.meet_table[block]].all() and inside[self.join_table[block]].all())

    def sublattice(self, ids: Iterable[int]) -> "FiniteLattice":
        """The sublattice on `ids`, keeping labels; ids are renumbered in increasing order."""
        ids = sorted(set(int(i) for i in ids))
        if not self.is_sublattice(ids):
            shown = ", ".join(self.labels[i] for i in ids[:8])
            raise NotASublattice(f"{{{shown}{', ...' if len(ids) > 8 else ''}}} is not closed under meet and join")
        position = np.full(self.size, -1, dtype=np.intp)
        position[ids] = np.arange(len(ids))
        block = np.ix_(ids, ids)
        return _assemble(
            tuple(self.labels[i] for i in ids),
            self.order[block].copy(),
            position[self.meet_table[block]],
            position[self.join_table[block]],
        )

    def interval(self, a: int, b: int) -> "FiniteLattice":
        """The sublattice [a, b] = {z : a <= z <= b}."""
        if not self.order[a, b]:
            raise NotComparable(self.labels[a], self.labels[b])
        return self.sublattice(np.flatnonzero(self.order[a] & self.order[:, b]))

    def join_irreducible_ids(self) -> Tuple[int, ...]:
        """Nonzero elements with exactly one lower cover."""
        return tuple(x for x in self.elements if len(self.lower_covers(x)) == 1)

    def join_irreducibles(self) -> FinitePoset:
        """J(L) with the induced order; labels are those of L."""
        return self.subposet(self.join_irreducible_ids())

    def satisfies_lattice_laws(self) -> bool:
        """Check idempotence, commutativity, absorption and associativity on full tables."""
        meet, join = self.meet_table, self.join_table
        ids = np.arange(self.size)
        if not ((meet[ids, ids] == ids).all() and (join[ids, ids] == ids).all()):
            return False
        if not ((meet == meet.T).all() and (join == join.T).all()):
            return False
        if not ((meet[ids[:, None], join] == ids[:, None]).all()
                and (join[ids[:, None], meet] == ids[:, None]).all()):
            return False
        for table in (meet, join):
            left = table[table[:, :, None], ids[None, None, :]]
            right = table[ids[:, None, None], table[None, :, :]]
            if not (left == right).all():
                return False
        # tables agree with the order
        return bool(((meet == ids[:, None]) == self.order).all())

    def same_as(self, other: "FiniteLattice") -> bool:
        """Identical up to element order: same labels and same labelled covers."""
        if set(self.labels) != set(other.labels):
            return False
        mine = {(self.labels[a], self.labels[b]) for a, b in self.covers}
        theirs = {(other.labels[a], other.labels[b]) for a, b in other.covers}
        return mine == theirs

    def to_dict(self) -> Dict[str, list]:
        """JSON interchange form."""
        return {
            "elements": list(self.labels),
            "covers": [[self.labels[a], self.labels[b]] for a, b in self.covers],
        }

    def __repr__(self) -> str:
        return f"FiniteLattice(size={self.size}, covers={len(self.covers)})"


def _check_size(n: int, config: Optional[ToolkitConfig]) -> None:
    limit = get_config(config).MAX_ELEMENTS
    if n > limit:
        raise SizeLimitExceeded("lattice size", n, limit)


def _bound_table(order: np.ndarray, labels: Tuple[str, ...],
                 error: Type[_PairError]) -> np.ndarray:
    """
    Greatest common lower bound of every pair under `order`.

    Passing the transposed order yields least upper bounds instead.
    """
    n = len(order)
    down_size = order.sum(axis=0)
    table = np.empty((n, n), dtype=np.intp)
    for x in range(n):
        common = order[:, [x]] & order  # common[z, y]: z below x and y
        counts = common.sum(axis=0)
        # the bound is the common lower bound whose own down-set is all of them
        candidates = common & (down_size[:, None] == counts[None, :])
        found = candidates.any(axis=0)
        if not found.all():
            y = int(np.flatnonzero(~found)[0])
            raise error(labels[x], labels[y])
        table[x] = candidates.argmax(axis=0)
    return table


def _assemble(labels: Tuple[str, ...], order: np.ndarray, meet: np.ndarray,
              join: np.ndarray, covers: Optional[Tuple[Cover, ...]] = None) -> FiniteLattice:
    bottoms = np.flatnonzero(order.all(axis=1))
    tops = np.flatnonzero(order.all(axis=0))
    if not (bottoms.size and tops.size):
        raise NoBoundsError("the order has no bottom or no top")
    lattice = FiniteLattice(
        labels=labels,
        order=_frozen(order),
        meet_table=_frozen(np.asarray(meet, dtype=np.intp)),
        join_table=_frozen(np.asarray(join, dtype=np.intp)),
        bottom=int(bottoms[0]),
        top=int(tops[0]),
    )
    if covers is not None:
        lattice.__dict__["covers"] = covers
    return lattice


def _transitive_closure(graph: nx.DiGraph, n: int) -> np.ndarray:
    order = np.eye(n, dtype=bool)
    for x in reversed(list(nx.topological_sort(graph))):
        for y in graph.successors(x):
            order[x] |= order[y]
    return order


def build_from_covers(labels: Sequence[str], cover_pairs: Iterable[Sequence[str]],
                      strict: bool = True,
                      config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Validate a cover relation and build the lattice it generates.

    Args:
        labels: Distinct element names; element ids follow this order
        cover_pairs: (lower, upper) name pairs
        strict: Reject implied cover pairs instead of dropping them with a warning
        config: Limits to enforce

    Returns:
        The validated lattice with synthesised order, meet and join tables
    """
    labels = tuple(str(label) for label in labels)
    if not labels:
        raise NoBoundsError("a lattice needs at least one element")
    _check_size(len(labels), config)
    index: Dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in index:
            raise MalformedInput(f"duplicate element label {label!r}")
        index[label] = i

    pairs = set()
    for pair in cover_pairs:
        lower, upper = (str(p) for p in pair)
        if lower not in index or upper not in index:
            raise MalformedInput(f"cover ({lower}, {upper}) names an unknown element")
        pairs.add((index[lower], index[upper]))

    n = len(labels)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(pairs)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected([labels[u] for u, _ in cycle] + [labels[cycle[0][0]]])
    order = _transitive_closure(graph, n)

    implied = []
    for lower, upper in sorted(pairs):
        between = order[lower] & order[:, upper]
        between[[lower, upper]] = False
        if between.any():
            implied.append((lower, upper, int(np.flatnonzero(between)[0])))
    if implied:
        if strict:
            lower, upper, via = implied[0]
            raise NotTransitivelyReduced(labels[lower], labels[upper], labels[via])
        logger.warning(
            "dropping %d implied cover pair(s): %s", len(implied),
            ", ".join(f"{labels[a]}<{labels[b]}" for a, b, _ in implied),
        )
        pairs -= {(a, b) for a, b, _ in implied}

    meet = _bound_table(order, labels, MeetUndefined)
    join = _bound_table(order.T, labels, JoinUndefined)
    return _assemble(labels, order, meet, join, covers=tuple(sorted(pairs)))


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise InvalidParameter(f"chain length must be at least 1, got {n}")
    labels = [str(i) for i in range(n)]
    return build_from_covers(labels, zip(labels, labels[1:]))


def boolean(m: int) -> FiniteLattice:
    """The lattice of subsets of {1..m}."""
    if m < 0:
        raise InvalidParameter(f"boolean rank must be nonnegative, got {m}")
    subsets = [frozenset(c) for k in range(m + 1) for c in combinations(range(1, m + 1), k)]

    def name(s: frozenset) -> str:
        return "{" + ",".join(str(i) for i in sorted(s)) + "}" if s else "∅"

    covers = [(name(s), name(s | {i})) for s in subsets for i in range(1, m + 1) if i not in s]
    return build_from_covers([name(s) for s in subsets], covers)


def mn(k: int) -> FiniteLattice:
    """Bottom, top and k pairwise incomparable atoms that are also coatoms."""
    if k < 0:
        raise InvalidParameter(f"number of atoms must be nonnegative, got {k}")
    middle = list(string.ascii_lowercase[:k]) if k <= 26 else [f"a{i}" for i in range(k)]
    covers = [("0", x) for x in middle] + [(x, "1") for x in middle]
    if not middle:
        covers = [("0", "1")]
    return build_from_covers(["0", *middle, "1"], covers)


def stock(kind: str, size: Optional[int] = None) -> FiniteLattice:
    """
    Named lattices: ``chain`` (n elements), ``boolean`` (rank m), ``mn`` (k atoms),
    ``m3``, ``n5`` and ``hexagon``.
    """
    kind = kind.lower()
    if kind in ("chain", "boolean", "mn"):
        if size is None:
            raise InvalidParameter(f"stock lattice {kind!r} needs a size")
        return {"chain": chain, "boolean": boolean, "mn": mn}[kind](size)
    if kind == "m3":
        return mn(3)
    if kind == "n5":
        return build_from_covers(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
    if kind == "hexagon":
        return build_from_covers(
            ["0", "a", "b", "c", "d", "1"],
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "d"), ("d", "1")],
        )
    raise MalformedInput(f"unknown stock lattice {kind!r}")
