"""
Ideals and filters of finite lattices.

Ideals and filters are stored as bitsets over element ids. Enumeration walks
the closure system in lectic order (next-closure), so it finds every ideal or
filter without assuming that they are principal.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import EmptyGeneratorSet
from lattice_toolkit.models.lattice import FiniteLattice
from lattice_toolkit.models.subspace import standard_span, sub_lattice
from lattice_toolkit.utils.helpers import bools_from_mask, iter_bits, mask_from_bools, popcount

logger = logging.getLogger(__name__)


class IdealKind(Enum):
    """Down-closed and join-closed, or up-closed and meet-closed."""
    IDEAL = "ideal"
    FILTER = "filter"


@dataclass(frozen=True)
class IdealOrFilter:
    """An ideal or a filter of a finite lattice."""
    lattice: FiniteLattice = field(compare=False, repr=False)
    kind: IdealKind
    members: int  # bitset over element ids
    generator: Optional[int] = None  # max of an ideal / min of a filter, when principal

    @property
    def is_principal(self) -> bool:
        return self.generator is not None

    def elements(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.members))

    def __len__(self) -> int:
        return popcount(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def describe(self) -> str:
        labels = self.lattice.labels
        arrow = "↓" if self.kind is IdealKind.IDEAL else "↑"
        head = f"{arrow}{labels[self.generator]}" if self.is_principal else "non-principal"
        return head + " = {" + ",".join(labels[x] for x in self.elements()) + "}"


def _tables(lattice: FiniteLattice, kind: IdealKind) -> Tuple[np.ndarray, np.ndarray]:
    """(operation table, cone matrix) with cone[x, y] iff y lies in the cone of x."""
    if kind is IdealKind.IDEAL:
        return lattice.join_table, lattice.order.T
    return lattice.meet_table, lattice.order


def _closure(lattice: FiniteLattice, kind: IdealKind, members: np.ndarray) -> np.ndarray:
    """Close a boolean member vector under the operation and the cone, to a fixpoint."""
    table, cone = _tables(lattice, kind)
    current = members.copy()
    while True:
        ids = np.flatnonzero(current)
        if ids.size == 0:
            return current
        grown = current.copy()
        grown[table[np.ix_(ids, ids)].ravel()] = True
        grown |= cone[np.flatnonzero(grown)].any(axis=0)
        if (grown == current).all():
            return current
        current = grown


def _generator(lattice: FiniteLattice, kind: IdealKind, members: np.ndarray) -> Optional[int]:
    """The element whose cone is exactly `members`, if any."""
    _, cone = _tables(lattice, kind)
    for x in np.flatnonzero(members).tolist():
        if (cone[x] == members).all():
            return x
    return None


def _make(lattice: FiniteLattice, kind: IdealKind, members: np.ndarray) -> IdealOrFilter:
    return IdealOrFilter(lattice, kind, mask_from_bools(members), _generator(lattice, kind, members))


def next_closure(lattice: FiniteLattice, kind: IdealKind) -> Iterator[int]:
    """
    Enumerate the closed sets (the empty set included) in lectic order.

    Args:
        lattice: Lattice whose ideals or filters are enumerated
        kind: Which closure system to walk

    Returns:
        Iterator of member bitsets
    """
    n = lattice.size

    def close(mask: int) -> int:
        return mask_from_bools(_closure(lattice, kind, bools_from_mask(mask, n)))

    full = (1 << n) - 1
    current = close(0)
    yield current
    while current != full:
        candidate = current
        for i in reversed(range(n)):
            bit = 1 << i
            if candidate & bit:
                candidate &= ~bit
                continue
            closed = close(candidate | bit)
            # accepted when no new element smaller than i appears
            if (closed & ~candidate) & (bit - 1) == 0:
                current = closed
                break
        else:
            return
        yield current


def _enumerate(lattice: FiniteLattice, kind: IdealKind) -> List[IdealOrFilter]:
    n = lattice.size
    found = [
        _make(lattice, kind, bools_from_mask(mask, n))
        for mask in next_closure(lattice, kind)
        if mask
    ]
    principal_count = sum(1 for item in found if item.is_principal)
    if principal_count != len(found):
        logger.warning("%d of %d %ss are not principal", len(found) - principal_count, len(found), kind.value)
    return found


def ideals(lattice: FiniteLattice) -> List[IdealOrFilter]:
    """Every ideal of the lattice, in lectic order of member sets."""
    return _enumerate(lattice, IdealKind.IDEAL)


def filters(lattice: FiniteLattice) -> List[IdealOrFilter]:
    """Every filter of the lattice, in lectic order of member sets."""
    return _enumerate(lattice, IdealKind.FILTER)


def _generated(lattice: FiniteLattice, kind: IdealKind, subset: Iterable[int]) -> IdealOrFilter:
    subset = [int(x) for x in subset]
    if not subset:
        raise EmptyGeneratorSet(f"an {kind.value} needs at least one generator")
    members = np.zeros(lattice.size, dtype=bool)
    members[subset] = True
    return _make(lattice, kind, _closure(lattice, kind, members))


def ideal_gen(lattice: FiniteLattice, subset: Iterable[int]) -> IdealOrFilter:
    """The ideal generated by `subset`, which is ↓(join of subset)."""
    return _generated(lattice, IdealKind.IDEAL, subset)


def filter_gen(lattice: FiniteLattice, subset: Iterable[int]) -> IdealOrFilter:
    """The filter generated by `subset`, which is ↑(meet of subset)."""
    return _generated(lattice, IdealKind.FILTER, subset)


def subspace_ideal(p: int, n: int, indices: Iterable[int],
                   lattice: Optional[FiniteLattice] = None) -> IdealOrFilter:
    """
    The ideal of Sub(F_p^n) made of all subspaces of span{e_i : i in indices}.

    Args:
        p: Field characteristic
        n: Ambient dimension
        indices: Subset of the natural basis indices 0..n-1
        lattice: A pre-built `sub_lattice(p, n)` to reuse

    Returns:
        Principal ideal generated by the spanned subspace
    """
    span = standard_span(p, n, indices)
    if lattice is None:
        lattice = sub_lattice(p, n)
    return ideal_gen(lattice, [lattice.index(span.label)])


@dataclass
class FilterPrincipalityReport:
    """Outcome of closing generating subsets into filters and locating their least elements."""
    lattice_size: int
    subsets_examined: int
    exhaustive: bool  # False when only subsets of size <= 2 were closed
    generators: Dict[int, int] = field(default_factory=dict)  # filter bitset -> least element
    non_principal: List[int] = field(default_factory=list)
    note: str = (
        "finite lattices satisfy the descending chain condition, so there is no "
        "non-principal filter to be generated by a filter of a sublattice"
    )

    @property
    def filter_count(self) -> int:
        return len(self.generators) + len(self.non_principal)

    @property
    def all_principal(self) -> bool:
        return not self.non_principal


def _least_element(lattice: FiniteLattice, members: np.ndarray) -> Optional[int]:
    """
    Minimal element of {f ∧ g : g in F} for a fixed f in F; F is principal
    iff it equals the up-set of that element.
    """
    ids = np.flatnonzero(members)
    f = int(ids[0])
    meets = np.unique(lattice.meet_table[f, ids])
    below = lattice.order[np.ix_(meets, meets)]
    # minimal: nothing else of the set lies below it
    minimal = [int(m) for m, column in zip(meets, below.T) if column.sum() == 1]
    m = minimal[0]
    return m if (lattice.order[m] == members).all() else None


def check_filter_principality(lattice: FiniteLattice,
                              config: Optional[ToolkitConfig] = None) -> FilterPrincipalityReport:
    """
    Close generating subsets into filters and check each one is principal.

    Every nonempty subset is closed when the lattice has at most
    FILTER_SUBSET_LIMIT elements; otherwise only subsets of size one and two.
    """
    n = lattice.size
    exhaustive = n <= get_config(config).FILTER_SUBSET_LIMIT
    max_size = n if exhaustive else 2
    report = FilterPrincipalityReport(lattice_size=n, subsets_examined=0, exhaustive=exhaustive)
    seen = set()
    for k in range(1, max_size + 1):
        for subset in combinations(range(n), k):
            report.subsets_examined += 1
            members = np.zeros(n, dtype=bool)
            members[list(subset)] = True
            closed = _closure(lattice, IdealKind.FILTER, members)
            mask = mask_from_bools(closed)
            if mask in seen:
                continue
            seen.add(mask)
            least = _least_element(lattice, closed)
            if least is None:
                report.non_principal.append(mask)
            else:
                report.generators[mask] = least
    logger.info("closed %d subsets into %d filters", report.subsets_examined, report.filter_count)
    return report
