"""
Finite lattice toolkit: congruence lattices, ideals and filters, identities,
automorphism groups and the constructions that combine them.
"""

from lattice_toolkit.errors import LatticeError
from lattice_toolkit.models.lattice import FiniteLattice, FinitePoset, build_from_covers, stock

__version__ = "0.1.0"

__all__ = ["FiniteLattice", "FinitePoset", "LatticeError", "build_from_covers", "stock"]
