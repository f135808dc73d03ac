"""
Generation of small lattices up to isomorphism.

Removing a coatom c from a lattice with at least three elements leaves a
lattice in which ↓c minus c is the down-set ↓A of the antichain A of lower
covers of c, and any two elements of ↓A join inside ↓A or at the top. Every
lattice with k elements therefore arises from one with k - 1 elements by
adding such a coatom.
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import InvalidParameter, SizeLimitExceeded
from lattice_toolkit.models.lattice import FiniteLattice, build_from_covers, chain

logger = logging.getLogger(__name__)

_cache: Dict[int, Tuple[FiniteLattice, ...]] = {}


def _antichains(lattice: FiniteLattice) -> Iterator[Tuple[int, ...]]:
    """Nonempty antichains avoiding the top, each listed once in increasing id order."""
    comparable = lattice.order | lattice.order.T
    candidates = [x for x in lattice.elements if x != lattice.top]

    def extend(chosen: List[int], start: int) -> Iterator[Tuple[int, ...]]:
        for k in range(start, len(candidates)):
            x = candidates[k]
            if any(comparable[x, y] for y in chosen):
                continue
            chosen.append(x)
            yield tuple(chosen)
            yield from extend(chosen, k + 1)
            chosen.pop()

    yield from extend([], 0)


def coatom_extensions(lattice: FiniteLattice) -> Iterator[FiniteLattice]:
    """
    Every lattice obtained by adding one new coatom.

    Args:
        lattice: Lattice with at least two elements

    Returns:
        Iterator of extensions, one per admissible antichain; the new element is last
    """
    if lattice.size < 2:
        raise InvalidParameter("coatom extensions need a lattice with at least two elements")
    top = lattice.top
    label = str(lattice.size)
    while label in lattice.labels:
        label += "'"
    for antichain in _antichains(lattice):
        down = lattice.order[:, list(antichain)].any(axis=1)
        ids = np.flatnonzero(down)
        joins = lattice.join_table[np.ix_(ids, ids)]
        if not (down[joins] | (joins == top)).all():
            continue
        covers = [
            (lattice.labels[a], lattice.labels[b])
            for a, b in lattice.covers
            if not (b == top and a in antichain)
        ]
        covers += [(lattice.labels[a], label) for a in antichain]
        covers.append((label, lattice.labels[top]))
        yield build_from_covers(list(lattice.labels) + [label], covers)


def _signature_graph(lattice: FiniteLattice) -> nx.DiGraph:
    graph = nx.DiGraph()
    for x in lattice.elements:
        graph.add_node(x, tag=f"{lattice.height(x)}:{lattice.depth(x)}")
    graph.add_edges_from(lattice.covers)
    return graph


def _same_tags(a: dict, b: dict) -> bool:
    return a["tag"] == b["tag"]


def _deduplicate(lattices: Iterator[FiniteLattice]) -> List[FiniteLattice]:
    """Keep one lattice per isomorphism class: Weisfeiler-Lehman buckets, then VF2."""
    buckets: Dict[Tuple[int, str], List[nx.DiGraph]] = {}
    kept: List[FiniteLattice] = []
    for lattice in lattices:
        graph = _signature_graph(lattice)
        key = (len(lattice.covers), nx.weisfeiler_lehman_graph_hash(graph, node_attr="tag"))
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other, node_match=_same_tags) for other in bucket):
            continue
        bucket.append(graph)
        kept.append(lattice)
    return kept


def enumerate_lattices(size: int, config: Optional[ToolkitConfig] = None) -> Tuple[FiniteLattice, ...]:
    """
    All lattices with `size` elements, one per isomorphism class.

    Results are cached per size; the order is deterministic.
    """
    if size < 1:
        raise InvalidParameter(f"lattice size must be at least 1, got {size}")
    limit = get_config(config).RIGID_SEARCH_MAX_SIZE
    if size > limit:
        raise SizeLimitExceeded("exhaustive lattice enumeration", size, limit)
    if size not in _cache:
        if size <= 2:
            _cache[size] = (chain(size),)
        else:
            smaller = enumerate_lattices(size - 1, config)
            extensions = (ext for lattice in smaller for ext in coatom_extensions(lattice))
            _cache[size] = tuple(_deduplicate(extensions))
        logger.info("%d lattices with %d elements", len(_cache[size]), size)
    return _cache[size]


def random_lattice(rng: np.random.Generator, size: int) -> FiniteLattice:
    """
    A random lattice with `size` elements, grown from the 2-chain by random coatom extensions.

    Args:
        rng: numpy random generator; the result depends only on its state
        size: Number of elements, at least 1

    Returns:
        FiniteLattice with labels "0", "1", "2", ...
    """
    if size < 1:
        raise InvalidParameter(f"lattice size must be at least 1, got {size}")
    lattice = chain(min(size, 2))
    while lattice.size < size:
        options = list(coatom_extensions(lattice))
        lattice = options[int(rng.integers(len(options)))]
    return lattice
