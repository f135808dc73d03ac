"""
Lattice terms and identities: parsing, exhaustive evaluation over a finite
lattice, and the modular, distributive, complementation and selfduality tests.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import BudgetExceeded, MalformedInput
from lattice_toolkit.models.autgroup import find_isomorphism
from lattice_toolkit.models.construct import glued_sum
from lattice_toolkit.models.lattice import FiniteLattice

logger = logging.getLogger(__name__)

VARIABLE_NAMES = "xyzwuvst"


class TermKind(Enum):
    VAR = "var"
    MEET = "meet"
    JOIN = "join"


@dataclass(frozen=True)
class LatticeTerm:
    """A variable, or the meet or join of two terms."""
    kind: TermKind
    index: int = -1
    left: Optional["LatticeTerm"] = None
    right: Optional["LatticeTerm"] = None

    @classmethod
    def var(cls, index: int) -> "LatticeTerm":
        return cls(TermKind.VAR, index=index)

    @classmethod
    def meet(cls, left: "LatticeTerm", right: "LatticeTerm") -> "LatticeTerm":
        return cls(TermKind.MEET, left=left, right=right)

    @classmethod
    def join(cls, left: "LatticeTerm", right: "LatticeTerm") -> "LatticeTerm":
        return cls(TermKind.JOIN, left=left, right=right)

    @property
    def variable_count(self) -> int:
        if self.kind is TermKind.VAR:
            return self.index + 1
        return max(self.left.variable_count, self.right.variable_count)

    def dual(self) -> "LatticeTerm":
        if self.kind is TermKind.VAR:
            return self
        swapped = TermKind.JOIN if self.kind is TermKind.MEET else TermKind.MEET
        return LatticeTerm(swapped, left=self.left.dual(), right=self.right.dual())

    def evaluate(self, lattice: FiniteLattice, values: List[np.ndarray]) -> np.ndarray:
        """Evaluate on arrays of element ids, one array per variable (broadcast together)."""
        if self.kind is TermKind.VAR:
            return values[self.index]
        table = lattice.meet_table if self.kind is TermKind.MEET else lattice.join_table
        return table[self.left.evaluate(lattice, values), self.right.evaluate(lattice, values)]

    def __str__(self) -> str:
        if self.kind is TermKind.VAR:
            return _variable_name(self.index)
        return f"({self.kind.value} {self.left} {self.right})"


def _variable_name(index: int) -> str:
    return VARIABLE_NAMES[index] if index < len(VARIABLE_NAMES) else f"x{index}"


@dataclass(frozen=True)
class Identity:
    """An equation between two lattice terms."""
    left: LatticeTerm
    right: LatticeTerm
    names: Tuple[str, ...] = ()  # variable names as written, by index

    @property
    def variable_count(self) -> int:
        return max(self.left.variable_count, self.right.variable_count)

    def dual(self) -> "Identity":
        return Identity(self.left.dual(), self.right.dual(), self.names)

    def variable_names(self) -> Tuple[str, ...]:
        if len(self.names) >= self.variable_count:
            return self.names
        return tuple(_variable_name(i) for i in range(self.variable_count))

    def __str__(self) -> str:
        return f"(= {self.left} {self.right})"


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokenize(text: str) -> List[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise MalformedInput(f"cannot read term at position {pos}")
        tokens.append(match.group(1))
        pos = match.end()
    return tokens


def parse_identity(text: str) -> Identity:
    """
    Parse the prefix syntax ``(= T T)`` with ``T := name | (meet T T ...) | (join T T ...)``.

    Variables are numbered in sorted order of their names, so x, y, z are
    0, 1, 2. Meets and joins of more than two terms associate to the left.
    """
    tokens = _tokenize(text)
    names = sorted({t for t in tokens if t not in ("(", ")", "=", "meet", "join")})
    variables: Dict[str, int] = {name: i for i, name in enumerate(names)}
    position = 0

    def take() -> str:
        nonlocal position
        if position >= len(tokens):
            raise MalformedInput("term ends early")
        token = tokens[position]
        position += 1
        return token

    def term() -> LatticeTerm:
        token = take()
        if token == ")":
            raise MalformedInput("unexpected ')'")
        if token != "(":
            if token in ("=", "meet", "join"):
                raise MalformedInput(f"{token!r} cannot be a variable")
            return LatticeTerm.var(variables[token])
        operator = take()
        if operator not in ("meet", "join"):
            raise MalformedInput(f"unknown operation {operator!r}")
        operands = [term()]
        while position < len(tokens) and tokens[position] != ")":
            operands.append(term())
        take()
        if len(operands) < 2:
            raise MalformedInput(f"{operator} needs at least two operands")
        build = LatticeTerm.meet if operator == "meet" else LatticeTerm.join
        result = operands[0]
        for operand in operands[1:]:
            result = build(result, operand)
        return result

    if take() != "(" or take() != "=":
        raise MalformedInput("an identity has the form (= term term)")
    left, right = term(), term()
    if take() != ")" or position != len(tokens):
        raise MalformedInput("trailing input after the identity")
    return Identity(left, right, tuple(names))


MODULAR_LAW = parse_identity("(= (join (meet x z) (meet y z)) (meet (join (meet x z) y) z))")
DISTRIBUTIVE_LAW = parse_identity("(= (meet x (join y z)) (join (meet x y) (meet x z)))")


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of exhaustive evaluation; the counterexample is the first in lexicographic order."""
    holds: bool
    assignments: int
    counterexample: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds

    def counterexample_labels(self, lattice: FiniteLattice) -> Optional[Tuple[str, ...]]:
        if self.counterexample is None:
            return None
        return tuple(lattice.labels[x] for x in self.counterexample)


def holds_in(lattice: FiniteLattice, identity: Identity,
             config: Optional[ToolkitConfig] = None) -> IdentityResult:
    """
    Evaluate both sides of `identity` under every assignment of variables.

    Assignments are evaluated in numpy blocks, one block per value of the
    first variable, stopping at the first block with a mismatch.

    Args:
        lattice: Lattice to evaluate in
        identity: Equation to check
        config: Supplies IDENTITY_BUDGET

    Returns:
        IdentityResult with the first failing assignment, if any
    """
    n = lattice.size
    k = identity.variable_count
    needed = n ** k
    budget = get_config(config).IDENTITY_BUDGET
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    rest = np.indices((n,) * (k - 1), dtype=np.intp) if k > 1 else []
    checked = 0
    for first in range(n):
        values = [np.full((n,) * (k - 1), first, dtype=np.intp)] + list(rest)
        mismatch = np.asarray(identity.left.evaluate(lattice, values)
                              != identity.right.evaluate(lattice, values))
        if mismatch.any():
            offset = np.argwhere(mismatch)[0] if k > 1 else ()
            witness = (first,) + tuple(int(i) for i in offset)
            checked += int(np.ravel_multi_index(offset, mismatch.shape)) + 1 if k > 1 else 1
            return IdentityResult(False, checked, witness)
        checked += n ** (k - 1)
    return IdentityResult(True, checked)


def is_modular(lattice: FiniteLattice, config: Optional[ToolkitConfig] = None) -> bool:
    return holds_in(lattice, MODULAR_LAW, config).holds


def is_distributive(lattice: FiniteLattice, config: Optional[ToolkitConfig] = None) -> bool:
    return holds_in(lattice, DISTRIBUTIVE_LAW, config).holds


def relative_complement_failure(lattice: FiniteLattice) -> Optional[Tuple[int, int, int]]:
    """First (a, b, x) with x in [a, b] and no y in [a, b] with x∧y = a and x∨y = b."""
    meet, join, order = lattice.meet_table, lattice.join_table, lattice.order
    for a in lattice.elements:
        for b in np.flatnonzero(order[a]).tolist():
            members = np.flatnonzero(order[a] & order[:, b])
            block = np.ix_(members, members)
            complemented = ((meet[block] == a) & (join[block] == b)).any(axis=1)
            if not complemented.all():
                return a, b, int(members[np.argmin(complemented)])
    return None


def is_relatively_complemented(lattice: FiniteLattice) -> bool:
    return relative_complement_failure(lattice) is None


def is_complemented(lattice: FiniteLattice) -> bool:
    """Every element has a complement in [0, 1]."""
    complemented = (lattice.meet_table == lattice.bottom) & (lattice.join_table == lattice.top)
    return bool(complemented.any(axis=1).all())


def is_selfdual(lattice: FiniteLattice) -> bool:
    """An order-reversing bijection exists: L is isomorphic to its dual."""
    return find_isomorphism(lattice, lattice.dual()) is not None


def find_n5(lattice: FiniteLattice) -> Optional[Tuple[int, int, int, int, int]]:
    """
    A pentagon sublattice as (a∧b, a, c, b, a∨b) with a < c and b a relative
    complement of both in [a∧b, a∨b]; None when the lattice is modular.
    """
    meet, join, order = lattice.meet_table, lattice.join_table, lattice.order
    for a in lattice.elements:
        for c in np.flatnonzero(order[a]).tolist():
            if c == a:
                continue
            candidates = (
                (meet[:, a] == meet[:, c]) & (join[:, a] == join[:, c])
                & ~order[:, c] & ~order[c, :]
            )
            if candidates.any():
                b = int(np.flatnonzero(candidates)[0])
                return int(meet[a, b]), a, c, b, int(join[a, b])
    return None


def find_m3(lattice: FiniteLattice) -> Optional[Tuple[int, int, int, int, int]]:
    """A diamond sublattice as (bottom, x, y, z, top), or None."""
    meet, join, order = lattice.meet_table, lattice.join_table, lattice.order
    comparable = order | order.T
    for x in lattice.elements:
        for y in np.flatnonzero(~comparable[x]).tolist():
            if y <= x:
                continue
            low, high = meet[x, y], join[x, y]
            candidates = (meet[x] == low) & (join[x] == high) & (meet[y] == low) & (join[y] == high)
            candidates[: y + 1] = False
            candidates &= ~comparable[x] & ~comparable[y]
            if candidates.any():
                z = int(np.flatnonzero(candidates)[0])
                return int(low), x, y, z, int(high)
    return None


@dataclass(frozen=True)
class TransferReport:
    """Whether an identity holds in A, in B and in their glued sum."""
    identity: str
    holds_in_lower: bool
    holds_in_upper: bool
    holds_in_sum: bool

    @property
    def consistent(self) -> bool:
        return self.holds_in_sum == (self.holds_in_lower and self.holds_in_upper)

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return (self.holds_in_lower, self.holds_in_upper, self.holds_in_sum)


def identity_transfer_check(lower: FiniteLattice, upper: FiniteLattice, identity: Identity,
                            config: Optional[ToolkitConfig] = None) -> TransferReport:
    """An identity holds in the glued sum iff it holds in both summands."""
    report = TransferReport(
        identity=str(identity),
        holds_in_lower=holds_in(lower, identity, config).holds,
        holds_in_upper=holds_in(upper, identity, config).holds,
        holds_in_sum=holds_in(glued_sum(lower, upper, config), identity, config).holds,
    )
    if not report.consistent:
        logger.warning("identity %s does not transfer through a glued sum: %s", identity, report.as_tuple())
    return report
