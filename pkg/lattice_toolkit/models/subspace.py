"""
Subspaces of F_p^n in reduced row-echelon form and the subspace lattice Sub(F_p^n).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import (
    AmbientMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidParameter,
    NotPrime,
    SizeLimitExceeded,
)
from lattice_toolkit.models.lattice import FiniteLattice, build_from_covers
from lattice_toolkit.utils.helpers import mask_from_bools

logger = logging.getLogger(__name__)

Row = Tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_field(p: int, config: Optional[ToolkitConfig] = None) -> None:
    if not (isinstance(p, (int, np.integer)) and is_prime(int(p)) and p <= get_config(config).MAX_PRIME):
        raise NotPrime(p)


def _rref(matrix: np.ndarray, p: int) -> np.ndarray:
    """Reduced row-echelon form over GF(p) with zero rows dropped."""
    m = np.array(matrix, dtype=np.int64) % p
    if m.size == 0:
        return m.reshape(0, m.shape[1] if m.ndim == 2 else 0)
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(m[r:, c])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        r += 1
    return m[:r]


def _nullspace(matrix: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : matrix @ v = 0} over GF(p)."""
    cols = matrix.shape[1]
    reduced = _rref(matrix, p)
    pivots = [int(np.flatnonzero(row)[0]) for row in reduced]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-reduced[i, f]) % p
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n; equality is equality of canonical echelon bases."""
    p: int
    n: int
    basis: Tuple[Row, ...]  # reduced row-echelon rows, no zero rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.n)

    @property
    def label(self) -> str:
        if not self.basis:
            return "[0]"
        sep = "" if self.p <= 10 else ","
        return "[" + ";".join(sep.join(str(v) for v in row) for row in self.basis) + "]"

    @cached_property
    def vector_mask(self) -> int:
        """Bitset of the member vectors, each encoded as a base-p integer."""
        coefficients = np.array(list(product(range(self.p), repeat=self.dim)), dtype=np.int64)
        coefficients = coefficients.reshape(self.p ** self.dim, self.dim)
        vectors = (coefficients @ self.matrix()) % self.p
        codes = vectors @ (self.p ** np.arange(self.n, dtype=np.int64))
        members = np.zeros(self.p ** self.n, dtype=bool)
        members[codes] = True
        return mask_from_bools(members)

    def contains(self, vector: Sequence[int]) -> bool:
        if len(vector) != self.n:
            raise DimensionMismatch(f"vector of length {len(vector)} in F_{self.p}^{self.n}")
        stacked = np.vstack([self.matrix(), np.array(vector, dtype=np.int64)])
        return len(_rref(stacked, self.p)) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return len(_rref(np.vstack([other.matrix(), self.matrix()]), self.p)) == other.dim

    def __str__(self) -> str:
        return self.label


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if (a.p, a.n) != (b.p, b.n):
        raise AmbientMismatch(f"F_{a.p}^{a.n} and F_{b.p}^{b.n} are different ambient spaces")


def canonicalize(p: int, n: int, vectors: Iterable[Sequence[int]],
                 config: Optional[ToolkitConfig] = None) -> Subspace:
    """
    Canonical echelon representation of the span of `vectors`.

    Args:
        p: Field characteristic (a prime below 256)
        n: Ambient dimension
        vectors: Spanning vectors of length n with entries in 0..p-1

    Returns:
        The Subspace spanned by the vectors (the zero subspace for no vectors)
    """
    _check_field(p, config)
    if n < 0:
        raise InvalidParameter(f"ambient dimension must be nonnegative, got {n}")
    rows = [tuple(int(v) for v in vector) for vector in vectors]
    for row in rows:
        if len(row) != n:
            raise DimensionMismatch(f"vector {row} does not have length {n}")
        if any(v < 0 or v >= p for v in row):
            raise InvalidParameter(f"vector {row} has entries outside 0..{p - 1}")
    if not rows:
        return Subspace(p, n, ())
    reduced = _rref(np.array(rows, dtype=np.int64), p)
    return Subspace(p, n, tuple(tuple(int(v) for v in row) for row in reduced))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Span of the union of the two bases."""
    _check_ambient(a, b)
    return canonicalize(a.p, a.n, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """
    Intersection by the kernel method: x·A = y·B exactly when (x, y) is in the
    null space of the transpose of [A; -B].
    """
    _check_ambient(a, b)
    if not a.dim or not b.dim:
        return Subspace(a.p, a.n, ())
    p = a.p
    stacked = np.vstack([a.matrix(), (-b.matrix()) % p])
    kernel = _nullspace(stacked.T, p)
    vectors = (kernel[:, :a.dim] @ a.matrix()) % p
    return canonicalize(p, a.n, vectors.tolist())


def standard_span(p: int, n: int, indices: Iterable[int]) -> Subspace:
    """span{e_i : i in indices} for the natural basis e_0..e_{n-1}."""
    indices = sorted(set(int(i) for i in indices))
    for i in indices:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"basis index {i} outside 0..{n - 1}")
    return canonicalize(p, n, [tuple(int(j == i) for j in range(n)) for i in indices])


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    numerator, denominator = 1, 1
    for i in range(k):
        numerator *= p ** (n - i) - 1
        denominator *= p ** (i + 1) - 1
    return numerator // denominator


def subspace_count(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(p: int, n: int, config: Optional[ToolkitConfig] = None) -> List[Subspace]:
    """
    All subspaces of F_p^n, generated directly as echelon matrices.

    Order is by dimension, then pivot pattern, then free entries; this is the
    element order of `sub_lattice(p, n)`.
    """
    _check_field(p, config)
    if n < 1:
        raise InvalidParameter(f"ambient dimension must be at least 1, got {n}")
    total = subspace_count(p, n)
    limit = get_config(config).MAX_ELEMENTS
    if total > limit:
        raise SizeLimitExceeded(f"Sub(F_{p}^{n})", total, limit)

    found: List[Subspace] = []
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
            for values in product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                found.append(Subspace(p, n, tuple(tuple(r) for r in rows)))
    logger.info("enumerated %d subspaces of F_%d^%d", len(found), p, n)
    return found


def sub_lattice(p: int, n: int, config: Optional[ToolkitConfig] = None) -> FiniteLattice:
    """
    The lattice of all subspaces of F_p^n ordered by inclusion.

    Args:
        p: Prime below 256
        n: Ambient dimension, at least 1
        config: Limits to enforce

    Returns:
        FiniteLattice whose labels are the echelon matrices, in the order of
        `enumerate_subspaces`; covers are inclusions with dimension gap one
    """
    subspaces = enumerate_subspaces(p, n, config)
    by_dim: List[List[Subspace]] = [[] for _ in range(n + 1)]
    for s in subspaces:
        by_dim[s.dim].append(s)
    covers = [
        (low.label, high.label)
        for k in range(n)
        for low in by_dim[k]
        for high in by_dim[k + 1]
        if low.vector_mask & ~high.vector_mask == 0
    ]
    return build_from_covers([s.label for s in subspaces], covers, config=config)
