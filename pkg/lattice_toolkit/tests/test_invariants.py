"""
Test cases for structural invariants, swept over every small lattice.
"""

import unittest
from functools import reduce

import numpy as np

from lattice_toolkit.models.autgroup import automorphisms, verify_automorphism
from lattice_toolkit.models.congruence import (
    Congruence, all_congruences, is_simple, join_irreducible_congruences, perspectivity_classes,
    prime_interval_congruences, princ_poset, principal,
)
from lattice_toolkit.models.enumeration import enumerate_lattices
from lattice_toolkit.models.identity import find_m3, find_n5, is_distributive, is_modular
from lattice_toolkit.models.lattice import stock
from lattice_toolkit.models.subspace import sub_lattice


def small_lattices(max_size):
    """Every lattice with at most `max_size` elements, plus the hexagon."""
    found = [lattice for size in range(1, max_size + 1) for lattice in enumerate_lattices(size)]
    return found + [stock("hexagon")]


class TestCongruenceInvariants(unittest.TestCase):
    """Test cases for Con(L) on all lattices with up to seven elements."""

    @classmethod
    def setUpClass(cls):
        """Set up test fixtures."""
        cls.lattices = small_lattices(7)

    def test_con_is_distributive(self):
        """Test that every congruence lattice is distributive."""
        for lattice in self.lattices:
            with self.subTest(covers=lattice.covers):
                self.assertTrue(is_distributive(all_congruences(lattice).lattice))

    def test_join_irreducibles_are_prime_generated(self):
        """Test that J(Con(L)) is the set of congruences generated by covers."""
        for lattice in self.lattices:
            con = all_congruences(lattice)
            found = {con.congruences[i] for i in con.lattice.join_irreducible_ids()}
            with self.subTest(covers=lattice.covers):
                self.assertEqual(found, set(join_irreducible_congruences(lattice)))

    def test_join_of_principal_congruences(self):
        """Test that each congruence is the join of the principal congruences it contains."""
        for lattice in self.lattices:
            pairs = list(zip(*np.nonzero(lattice.order)))
            for theta in all_congruences(lattice):
                below = [principal(lattice, int(a), int(b)) for a, b in pairs if theta.contains(a, b)]
                joined = reduce(Congruence.join, below, Congruence.identity(lattice))
                with self.subTest(covers=lattice.covers, theta=theta.describe()):
                    self.assertEqual(joined, theta)

    def test_princ_chain_means_all_principal(self):
        """Test that Con(L) equals Princ(L) whenever Princ(L) is a chain."""
        chains = 0
        for lattice in self.lattices:
            family = princ_poset(lattice)
            if family.is_chain():
                chains += 1
                with self.subTest(covers=lattice.covers):
                    self.assertEqual(set(family), set(all_congruences(lattice)))
        self.assertGreater(chains, 0)

    def test_perspectivity_shortcut(self):
        """Test that one closure per perspectivity class finds every cover congruence."""
        for lattice in self.lattices + [sub_lattice(2, 3), stock("m3"), stock("boolean", 3)]:
            naive = {principal(lattice, a, b) for a, b in lattice.covers}
            with self.subTest(covers=lattice.covers):
                self.assertEqual(set(prime_interval_congruences(lattice)), naive)
                self.assertEqual(is_simple(lattice), lattice.size >= 2 and all(t.is_total for t in naive))


class TestPerspectivityClasses(unittest.TestCase):
    """Test cases for grouping covers by perspectivity."""

    def test_subspace_lattice(self):
        """Test that all covers of Sub(F_2^3) fall into one class."""
        lattice = sub_lattice(2, 3)
        classes = perspectivity_classes(lattice)
        self.assertEqual(len(classes), 1)
        self.assertEqual(sorted(classes[0]), sorted(lattice.covers))

    def test_chain(self):
        """Test that the covers of a chain are pairwise not perspective."""
        self.assertEqual(len(perspectivity_classes(stock("chain", 4))), 3)

    def test_larger_subspace_lattice_is_simple(self):
        """Test simplicity of Sub(F_2^4) through one closure."""
        lattice = sub_lattice(2, 4)
        self.assertEqual(len(perspectivity_classes(lattice)), 1)
        self.assertTrue(is_simple(lattice))


class TestOrderInvariants(unittest.TestCase):
    """Test cases for order-theoretic invariants on all lattices with up to six elements."""

    @classmethod
    def setUpClass(cls):
        """Set up test fixtures."""
        cls.lattices = small_lattices(6)

    def test_double_dual(self):
        """Test that dualising twice gives back the lattice."""
        for lattice in self.lattices:
            self.assertTrue(lattice.dual().dual().same_as(lattice))

    def test_height_plus_depth(self):
        """Test that height and depth never add up to more than the length."""
        for lattice in self.lattices:
            self.assertTrue((lattice.heights + lattice.depths <= lattice.length).all())
            self.assertEqual(int(lattice.heights[lattice.top]), lattice.length)

    def test_join_irreducibles_generate(self):
        """Test that every element is the join of the join-irreducibles below it."""
        for lattice in self.lattices:
            irreducibles = lattice.join_irreducible_ids()
            for x in lattice.elements:
                below = [j for j in irreducibles if lattice.leq(j, x)]
                self.assertEqual(lattice.join_all(below), x)

    def test_automorphisms_keep_levels(self):
        """Test that automorphism generators preserve meet, join, height and depth."""
        for lattice in self.lattices:
            for perm in automorphisms(lattice).generators:
                with self.subTest(covers=lattice.covers, perm=perm):
                    self.assertTrue(verify_automorphism(lattice, perm))
                    self.assertTrue((lattice.heights[list(perm)] == lattice.heights).all())
                    self.assertTrue((lattice.depths[list(perm)] == lattice.depths).all())

    def test_identities_match_sublattice_tests(self):
        """Test the modular and distributive laws against N5 and M3 sublattice search."""
        for lattice in self.lattices:
            no_n5 = find_n5(lattice) is None
            with self.subTest(covers=lattice.covers):
                self.assertEqual(is_modular(lattice), no_n5)
                self.assertEqual(is_distributive(lattice), no_n5 and find_m3(lattice) is None)


if __name__ == '__main__':
    unittest.main()
