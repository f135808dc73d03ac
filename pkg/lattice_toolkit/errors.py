"""
Error hierarchy for the finite lattice toolkit.

Every domain failure raised by the library derives from ``LatticeError`` so
callers (and the command line front door) can tell them apart from
programming errors.
"""

from typing import Optional, Sequence


class LatticeError(ValueError):
    """Base class for all domain errors."""


class MalformedInput(LatticeError):
    """Interchange data, stock names or term syntax could not be understood."""


class CycleDetected(LatticeError):
    """The cover relation contains a directed cycle."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = tuple(cycle)
        super().__init__("cover relation has a cycle: " + " < ".join(self.cycle))


class NotTransitivelyReduced(LatticeError):
    """A cover pair is implied by a longer chain of covers."""

    def __init__(self, lower: str, upper: str, via: str):
        self.pair = (lower, upper)
        self.via = via
        super().__init__(f"{lower} < {upper} is not a cover (implied through {via})")


class _PairError(LatticeError):
    template = "{x}, {y}"

    def __init__(self, x: str, y: str):
        self.pair = (x, y)
        super().__init__(self.template.format(x=x, y=y))


class MeetUndefined(_PairError):
    """Two elements have no greatest common lower bound."""

    template = "meet of {x} and {y} is not defined"


class JoinUndefined(_PairError):
    """Two elements have no least common upper bound."""

    template = "join of {x} and {y} is not defined"


class NotComparable(_PairError):
    """An interval was requested between incomparable elements."""

    template = "{x} is not below {y}"


class NoBoundsError(LatticeError):
    """The ordered set has no bottom or no top."""


class InvalidParameter(LatticeError):
    """A numeric or structural parameter is out of range."""


class InvalidParameters(InvalidParameter):
    """A combination of parameters is out of range."""


class NotPrime(InvalidParameter):
    """The field characteristic is not a supported prime."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is not a prime below 256")


class DimensionMismatch(LatticeError):
    """A vector does not have the ambient dimension."""


class AmbientMismatch(LatticeError):
    """Two subspaces live in different ambient spaces."""


class SizeLimitExceeded(LatticeError):
    """A computation would exceed a configured size limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size} exceeds the configured limit {limit}")


class NotASublattice(LatticeError):
    """A subset is not closed under meet and join."""


class EmptyGeneratorSet(LatticeError):
    """An ideal or filter was requested from an empty generating set."""


class IndexOutOfRange(LatticeError):
    """A basis index lies outside 0..n-1."""


class NotAnAtom(LatticeError):
    """An atom-interval replacement was requested for a non-atom."""


class UnboundedReplacement(LatticeError):
    """A replacement lattice is too small to be spliced into a prime interval."""


class TooSmall(LatticeError):
    """A construction received a lattice below its minimum size."""


class BudgetExceeded(LatticeError):
    """Exhaustive evaluation would exceed the configured budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} term evaluations exceed the budget of {budget}")


class NotEnoughFound(LatticeError):
    """A search ended with fewer results than requested."""

    def __init__(self, found: int, wanted: int, bound: Optional[int] = None):
        self.found = found
        self.wanted = wanted
        where = f" with at most {bound} elements" if bound is not None else ""
        super().__init__(f"found {found} of {wanted} requested lattices{where}")
