"""
Lattice constructions: glued sums, the W-gadget and its tower, atom-interval
replacement, the M3-cap, the composite with 2^m·3^n congruences and the
product of chains with its coordinate congruences.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import (
    IndexOutOfRange,
    InvalidParameter,
    InvalidParameters,
    NotAnAtom,
    SizeLimitExceeded,
    TooSmall,
    UnboundedReplacement,
)
from lattice_toolkit.models.congruence import Congruence, all_congruences, is_simple, principal
from lattice_toolkit.models.lattice import FiniteLattice, boolean, build_from_covers
from lattice_toolkit.models.subspace import sub_lattice

logger = logging.getLogger(__name__)

CoverNames = List[Tuple[str, str]]


def _fresh(label: str, taken: Set[str]) -> str:
    """`label`, primed until it is not taken; the result is reserved."""
    while label in taken:
        label += "'"
    taken.add(label)
    return label


def _cover_names(lattice: FiniteLattice, rename: Mapping[int, str]) -> CoverNames:
    return [(rename[a], rename[b]) for a, b in lattice.covers]


def glued_sum(lower: FiniteLattice, upper: FiniteLattice,
              config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Hall-Dilworth gluing: the top of `lower` is identified with the bottom of `upper`.

    Element ids of `lower` are kept; the other elements of `upper` follow in
    their own order, primed where a label is already taken.
    """
    taken = set(lower.labels)
    names: Dict[int, str] = {upper.bottom: lower.labels[lower.top]}
    for x in upper.elements:
        if x != upper.bottom:
            names[x] = _fresh(upper.labels[x], taken)
    labels = list(lower.labels) + [names[x] for x in upper.elements if x != upper.bottom]
    covers = _cover_names(lower, dict(enumerate(lower.labels))) + _cover_names(upper, names)
    return build_from_covers(labels, covers, config=config)


def w_gadget(seed: FiniteLattice, tag: Optional[str] = None,
             config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Add a new bottom below and a new top above `seed`, plus two atom-coatoms u, v.

    u and v are incomparable to each other and to every element of the seed.
    The seed keeps its element ids; the new elements come after it as
    0', 1', u, v (or 0_tag, 1_tag, u_tag, v_tag).
    """
    taken = set(seed.labels)
    if tag is None:
        names = ("0'", "1'", "u", "v")
    else:
        names = tuple(f"{name}_{tag}" for name in "01uv")
    bottom, top, u, v = (_fresh(name, taken) for name in names)
    labels = list(seed.labels) + [bottom, top, u, v]
    covers = _cover_names(seed, dict(enumerate(seed.labels))) + [
        (bottom, seed.labels[seed.bottom]),
        (seed.labels[seed.top], top),
        (bottom, u), (u, top),
        (bottom, v), (v, top),
    ]
    return build_from_covers(labels, covers, config=config)


@dataclass(frozen=True)
class TowerStage:
    """Stage i of the W-gadget tower over a seed."""
    index: int
    lattice: FiniteLattice
    chain: Tuple[int, ...]  # stage bottoms, seed bottom first; later bottoms are lower
    stage_sizes: Tuple[int, ...]  # |L_0|, ..., |L_i|; L_j occupies ids 0..|L_j|-1

    def stage_elements(self, j: int) -> Tuple[int, ...]:
        return tuple(range(self.stage_sizes[j]))

    def congruence_blocks(self) -> List[Tuple[Tuple[int, ...], ...]]:
        """The non-singleton blocks of every congruence other than Δ."""
        return [
            theta.non_singleton_blocks()
            for theta in all_congruences(self.lattice)
            if not theta.is_identity
        ]


def tower(seed: FiniteLattice, stages: int, config: Optional[ToolkitConfig] = None) -> TowerStage:
    """
    Iterate the W-gadget `stages` times over `seed`.

    Args:
        seed: Starting lattice, expected to be simple
        stages: Number of W-gadget steps, at least 0
        config: Limits to enforce

    Returns:
        TowerStage for the last stage
    """
    if stages < 0:
        raise InvalidParameter(f"stage count must be nonnegative, got {stages}")
    limit = get_config(config).MAX_ELEMENTS
    final_size = seed.size + 4 * stages
    if final_size > limit:
        raise SizeLimitExceeded("tower size", final_size, limit)
    if not is_simple(seed):
        logger.warning("tower seed with %d elements is not simple", seed.size)

    lattice = seed
    chain = [seed.bottom]
    sizes = [seed.size]
    for i in range(1, stages + 1):
        lattice = w_gadget(lattice, tag=str(i), config=config)
        chain.append(sizes[-1])  # the new bottom is the first element after the previous stage
        sizes.append(lattice.size)
    return TowerStage(stages, lattice, tuple(chain), tuple(sizes))


def replace_atom_intervals(lattice: FiniteLattice,
                           assignment: Mapping[Union[int, str], FiniteLattice],
                           config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Replace each prime interval [0, a] for an assigned atom a by a lattice K(a).

    0_K(a) is identified with the bottom and 1_K(a) with a. Elements of the
    original lattice keep their ids; inner elements of each K(a) follow, atom
    by atom in increasing atom id.

    Args:
        lattice: Lattice whose atom intervals are replaced
        assignment: Atom (id or label) to replacement lattice with at least two elements
        config: Limits to enforce

    Returns:
        The spliced lattice
    """
    resolved: Dict[int, FiniteLattice] = {}
    for key, replacement in assignment.items():
        atom = lattice.index(key) if isinstance(key, str) else int(key)
        if not 0 <= atom < lattice.size:
            raise NotAnAtom(f"{key!r} is not an element id of the lattice")
        if atom not in lattice.atoms:
            raise NotAnAtom(f"{lattice.labels[atom]} is not an atom")
        if replacement.size < 2:
            raise UnboundedReplacement(
                f"replacement for {lattice.labels[atom]} has {replacement.size} element(s), needs 2"
            )
        resolved[atom] = replacement
    if not resolved:
        return lattice

    taken = set(lattice.labels)
    labels = list(lattice.labels)
    bottom_label = lattice.labels[lattice.bottom]
    covers = [
        (lattice.labels[a], lattice.labels[b])
        for a, b in lattice.covers
        if not (a == lattice.bottom and b in resolved)
    ]
    for atom in sorted(resolved):
        replacement = resolved[atom]
        names = {replacement.bottom: bottom_label, replacement.top: lattice.labels[atom]}
        for x in replacement.elements:
            if x not in names:
                names[x] = _fresh(replacement.labels[x], taken)
                labels.append(names[x])
        covers.extend(_cover_names(replacement, names))
    return build_from_covers(labels, covers, config=config)


@dataclass(frozen=True)
class M3Cap:
    """The M3-cap over a base lattice Lp with H spliced below v."""
    lattice: FiniteLattice
    lp_ids: Tuple[int, ...]  # id in the cap of each Lp element, in Lp order
    h_ids: Tuple[int, ...]  # id in the cap of each H element, in H order; 1_H is v
    u: int
    v: int

    def m3_sublattice(self, z: int) -> Tuple[int, ...]:
        """{0, z, u, v, 1} for a nonzero element z of Lp."""
        return (self.lattice.bottom, z, self.u, self.v, self.lattice.top)


def build_m3_cap(base: FiniteLattice, h: FiniteLattice,
                 config: Optional[ToolkitConfig] = None) -> M3Cap:
    """
    Assemble 0, the nonzero part of `base`, a new atom-coatom u, H with
    0_H = 0 and 1_H = v, and a new top above 1_base, u and v.

    Every nonzero element of H is a complement of every nonzero element of
    base and of u.
    """
    if base.size < 3:
        raise TooSmall(f"base lattice has {base.size} elements, needs at least 3")
    if h.size < 2:
        raise TooSmall(f"H has {h.size} element(s), needs at least 2")
    taken = set(base.labels)
    bottom_label = base.labels[base.bottom]
    u_label = _fresh("u", taken)
    h_names = {h.bottom: bottom_label}
    for x in h.elements:
        if x != h.bottom:
            h_names[x] = _fresh(h.labels[x], taken)
    top_label = _fresh("1", taken)

    h_order = [x for x in h.elements if x != h.bottom]
    labels = list(base.labels) + [u_label] + [h_names[x] for x in h_order] + [top_label]
    covers = _cover_names(base, dict(enumerate(base.labels))) + _cover_names(h, h_names) + [
        (bottom_label, u_label), (u_label, top_label),
        (base.labels[base.top], top_label),
        (h_names[h.top], top_label),
    ]
    cap = build_from_covers(labels, covers, config=config)

    u = base.size
    position = {x: u + 1 + k for k, x in enumerate(h_order)}
    position[h.bottom] = base.bottom
    return M3Cap(
        lattice=cap,
        lp_ids=tuple(base.elements),
        h_ids=tuple(position[x] for x in h.elements),
        u=u,
        v=position[h.top],
    )


def m3_cap(base: FiniteLattice, h: FiniteLattice,
           config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    return build_m3_cap(base, h, config).lattice


def zero_separated(h: FiniteLattice) -> bool:
    """
    Every congruence other than ∇ keeps {0} as a block.

    A congruence collapsing 0 with anything collapses 0 with an atom, so it is
    enough that cg(0, a) = ∇ for every atom a.
    """
    return all(principal(h, h.bottom, a).is_total for a in h.atoms)


def freese_composite(p: int, dim: int, m: int, n: int,
                     config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    Glued sum with 2^m·3^n congruences.

    n copies of w_gadget(Sub(F_p^dim)) (three congruences each), then
    boolean(m-1) when m >= 2, then Sub(F_p^dim) when m >= 1.
    """
    if m < 0 or n < 0:
        raise InvalidParameter(f"m and n must be nonnegative, got m={m}, n={n}")
    if m + n == 0:
        raise InvalidParameters("m + n must be at least 1")
    if dim < 2:
        raise InvalidParameter(f"subspace dimension must be at least 2, got {dim}")
    simple = sub_lattice(p, dim, config)
    parts = [w_gadget(simple, tag=f"w{i + 1}", config=config) for i in range(n)]
    if m >= 2:
        parts.append(boolean(m - 1))
    if m >= 1:
        parts.append(simple)
    return reduce(lambda acc, part: glued_sum(acc, part, config), parts)


@lru_cache(maxsize=32)
def _product_of_chains(n: int, h: int) -> FiniteLattice:
    sep = "" if h < 10 else ","
    points = list(product(range(h + 1), repeat=n))
    name = {pt: sep.join(str(c) for c in pt) for pt in points}
    covers = [
        (name[pt], name[pt[:i] + (pt[i] + 1,) + pt[i + 1:]])
        for pt in points
        for i in range(n)
        if pt[i] < h
    ]
    return build_from_covers([name[pt] for pt in points], covers)


def product_of_chains(n: int, h: int, config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """n-tuples over the chain 0 < 1 < ... < h, ordered componentwise, in lexicographic id order."""
    if n < 1 or h < 1:
        raise InvalidParameter(f"product of chains needs n >= 1 and h >= 1, got n={n}, h={h}")
    size = (h + 1) ** n
    limit = get_config(config).MAX_ELEMENTS
    if size > limit:
        raise SizeLimitExceeded("product of chains", size, limit)
    return _product_of_chains(n, h)


def theta_of(n: int, h: int, coordinates: Iterable[int],
             config: Optional[ToolkitConfig] = None) -> Congruence:
    """Tuples are congruent iff they agree on every coordinate in `coordinates`."""
    coordinates = sorted(set(int(i) for i in coordinates))
    for i in coordinates:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"coordinate {i} outside 0..{n - 1}")
    lattice = product_of_chains(n, h, config)
    points = np.array(list(product(range(h + 1), repeat=n)), dtype=np.intp).reshape(-1, n)
    keys = points[:, coordinates] @ ((h + 1) ** np.arange(len(coordinates), dtype=np.intp))
    return Congruence.from_block_index(lattice, keys)


def add_top(lattice: FiniteLattice, config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """A new top above the old one, which becomes join-irreducible."""
    taken = set(lattice.labels)
    top = _fresh("1", taken)
    covers = _cover_names(lattice, dict(enumerate(lattice.labels)))
    covers.append((lattice.labels[lattice.top], top))
    return build_from_covers(list(lattice.labels) + [top], covers, config=config)
