"""
Test cases for the lattice core.
"""

import unittest

import networkx as nx
import numpy as np

from lattice_toolkit.config import ToolkitConfig
from lattice_toolkit.errors import (
    CycleDetected, JoinUndefined, MalformedInput, MeetUndefined, NoBoundsError,
    NotASublattice, NotComparable, NotTransitivelyReduced, SizeLimitExceeded,
)
from lattice_toolkit.models.lattice import FiniteLattice, boolean, build_from_covers, mn, stock


class TestBuildFromCovers(unittest.TestCase):
    """Test cases for validating cover relations."""

    def setUp(self):
        """Set up test fixtures."""
        self.n5 = stock("n5")

    def test_n5_tables(self):
        """Test meets and joins synthesised for the pentagon."""
        idx = self.n5.index
        self.assertEqual(self.n5.meet(idx("c"), idx("b")), idx("0"))
        self.assertEqual(self.n5.join(idx("a"), idx("b")), idx("1"))
        self.assertEqual(self.n5.join(idx("a"), idx("c")), idx("c"))
        self.assertEqual(self.n5.bottom, idx("0"))
        self.assertEqual(self.n5.top, idx("1"))
        self.assertTrue(self.n5.satisfies_lattice_laws())

    def test_single_element(self):
        """Test the one-element lattice."""
        lattice = build_from_covers(["0"], [])
        self.assertEqual(lattice.size, 1)
        self.assertEqual(lattice.bottom, lattice.top)
        self.assertEqual(lattice.atoms, ())

    def test_cycle(self):
        """Test that a cyclic cover relation is rejected."""
        with self.assertRaises(CycleDetected) as caught:
            build_from_covers(["a", "b"], [("a", "b"), ("b", "a")])
        self.assertIn("a", caught.exception.cycle)

    def test_implied_cover_strict(self):
        """Test that an implied pair is rejected and reported."""
        with self.assertRaises(NotTransitivelyReduced) as caught:
            build_from_covers(["0", "a", "1"], [("0", "a"), ("a", "1"), ("0", "1")])
        self.assertEqual(caught.exception.pair, ("0", "1"))
        self.assertEqual(caught.exception.via, "a")

    def test_implied_cover_lenient(self):
        """Test that lenient mode drops the implied pair."""
        with self.assertLogs("lattice_toolkit.models.lattice", level="WARNING"):
            lattice = build_from_covers(["0", "a", "1"], [("0", "a"), ("a", "1"), ("0", "1")], strict=False)
        self.assertEqual(len(lattice.covers), 2)
        self.assertEqual(lattice.covers, ((0, 1), (1, 2)))

    def test_no_top(self):
        """Test that two maximal elements give no join."""
        with self.assertRaises(JoinUndefined) as caught:
            build_from_covers(["0", "a", "b"], [("0", "a"), ("0", "b")])
        self.assertEqual(set(caught.exception.pair), {"a", "b"})

    def test_no_meet(self):
        """Test that a bowtie has no meet for its upper pair."""
        labels = ["0", "a", "b", "c", "d", "1"]
        covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
        with self.assertRaises((MeetUndefined, JoinUndefined)):
            build_from_covers(labels, covers)

    def test_duplicate_and_unknown_labels(self):
        """Test interchange errors."""
        with self.assertRaises(MalformedInput):
            build_from_covers(["0", "0"], [])
        with self.assertRaises(MalformedInput):
            build_from_covers(["0", "1"], [("0", "2")])
        with self.assertRaises(NoBoundsError):
            build_from_covers([], [])

    def test_size_limit(self):
        """Test that the element limit is enforced."""
        with self.assertRaises(SizeLimitExceeded):
            build_from_covers([str(i) for i in range(5)], [], config=ToolkitConfig(MAX_ELEMENTS=4))


class TestFiniteLattice(unittest.TestCase):
    """Test cases for lattice queries."""

    def setUp(self):
        """Set up test fixtures."""
        self.b3 = boolean(3)
        self.hexagon = stock("hexagon")

    def test_boolean_shape(self):
        """Test sizes, atoms and length of the cube."""
        self.assertEqual(self.b3.size, 8)
        self.assertEqual(len(self.b3.atoms), 3)
        self.assertEqual(len(self.b3.coatoms), 3)
        self.assertEqual(self.b3.length, 3)
        self.assertEqual(self.b3.labels[0], "∅")

    def test_meet_join_all(self):
        """Test folded meets and joins."""
        atoms = self.b3.atoms
        self.assertEqual(self.b3.join_all(atoms), self.b3.top)
        self.assertEqual(self.b3.meet_all(atoms), self.b3.bottom)
        self.assertEqual(self.b3.meet_all([]), self.b3.top)

    def test_dual(self):
        """Test that the dual swaps bounds and tables."""
        dual = self.hexagon.dual()
        self.assertEqual(dual.bottom, self.hexagon.top)
        np.testing.assert_array_equal(dual.meet_table, self.hexagon.join_table)
        self.assertTrue(dual.satisfies_lattice_laws())

    def test_interval(self):
        """Test intervals and the incomparable case."""
        idx = self.hexagon.index
        interval = self.hexagon.interval(idx("a"), idx("1"))
        self.assertEqual(interval.labels, ("a", "b", "1"))
        with self.assertRaises(NotComparable):
            self.hexagon.interval(idx("a"), idx("c"))

    def test_sublattice(self):
        """Test sublattice checks keep labels and renumber."""
        idx = self.hexagon.index
        sub = self.hexagon.sublattice([idx("0"), idx("b"), idx("d"), idx("1")])
        self.assertEqual(sub.size, 4)
        self.assertEqual(sub.labels[sub.top], "1")
        with self.assertRaises(NotASublattice):
            self.hexagon.sublattice([idx("a"), idx("c")])

    def test_join_irreducibles(self):
        """Test J(L) of the hexagon."""
        poset = self.hexagon.join_irreducibles()
        self.assertEqual(set(poset.labels), {"a", "b", "c", "d"})
        self.assertEqual(len(poset.covers), 2)

    def test_unknown_label(self):
        """Test that index raises for unknown labels."""
        with self.assertRaises(MalformedInput):
            self.hexagon.index("z")

    def test_from_order(self):
        """Test building from a full order matrix."""
        order = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
        lattice = FiniteLattice.from_order(["x", "y", "z"], order)
        self.assertTrue(lattice.is_chain())
        self.assertEqual(lattice.covers, ((0, 1), (1, 2)))


class TestStockLattices(unittest.TestCase):
    """Test cases for named lattices."""

    def test_sizes(self):
        """Test stock sizes."""
        self.assertEqual(stock("m3").size, 5)
        self.assertEqual(stock("chain", 4).size, 4)
        self.assertEqual(stock("boolean", 2).size, 4)
        self.assertEqual(mn(0).size, 2)
        self.assertEqual(stock("hexagon").size, 6)

    def test_isomorphism(self):
        """Test that M2 and the square are isomorphic but N5 and M3 are not."""
        self.assertTrue(mn(2).is_isomorphic(boolean(2)))
        self.assertFalse(stock("n5").is_isomorphic(stock("m3")))

    def test_hasse_graph(self):
        """Test the networkx cover digraph of N5."""
        graph = stock("n5").hasse_graph()
        self.assertIsInstance(graph, nx.DiGraph)
        self.assertEqual(sorted(graph.edges), sorted(stock("n5").covers))
        self.assertEqual(graph.nodes[3]["label"], "c")
        self.assertEqual(graph.nodes[4]["height"], 3)

    def test_unknown(self):
        """Test that an unknown name is rejected."""
        with self.assertRaises(MalformedInput):
            stock("pentagon")


if __name__ == '__main__':
    unittest.main()
