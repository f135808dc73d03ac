"""Computational modules: lattices, subspaces, congruences, ideals, constructions, identities, automorphisms."""
