"""
Test cases for lattice terms, identities and the derived property checks.
"""

import unittest

from lattice_toolkit.config import ToolkitConfig
from lattice_toolkit.errors import BudgetExceeded, MalformedInput
from lattice_toolkit.models.identity import (
    DISTRIBUTIVE_LAW, MODULAR_LAW, find_m3, find_n5, holds_in, identity_transfer_check,
    is_complemented, is_distributive, is_modular, is_relatively_complemented, is_selfdual,
    parse_identity, relative_complement_failure,
)
from lattice_toolkit.models.lattice import boolean, chain, stock
from lattice_toolkit.models.subspace import sub_lattice


class TestParsing(unittest.TestCase):
    """Test cases for the prefix term syntax."""

    def test_round_trip_text(self):
        """Test that parsed identities print back in the same syntax."""
        text = "(= (meet x y) (meet y x))"
        self.assertEqual(str(parse_identity(text)), text)

    def test_variable_numbering(self):
        """Test that variables are numbered in sorted order of their names."""
        identity = parse_identity("(= (join q p) (join p q))")
        self.assertEqual(identity.variable_names(), ("p", "q"))
        self.assertEqual(identity.variable_count, 2)

    def test_many_operands(self):
        """Test that longer meets associate to the left."""
        identity = parse_identity("(= (join x y z) (join (join x y) z))")
        self.assertTrue(holds_in(stock("n5"), identity).holds)

    def test_malformed(self):
        """Test syntax errors."""
        for text in ("(= x)", "(= (foo x y) x)", "(= (meet x) x)", "x = y", "(= x y) z"):
            with self.assertRaises(MalformedInput):
                parse_identity(text)

    def test_dual(self):
        """Test that duals swap meet and join."""
        dual = parse_identity("(= (meet x (join y z)) x)").dual()
        self.assertEqual(str(dual), "(= (join x (meet y z)) x)")


class TestHoldsIn(unittest.TestCase):
    """Test cases for exhaustive evaluation."""

    def setUp(self):
        """Set up test fixtures."""
        self.n5 = stock("n5")
        self.m3 = stock("m3")

    def test_modular_counterexample(self):
        """Test the first modular-law counterexample in N5."""
        result = holds_in(self.n5, MODULAR_LAW)
        self.assertFalse(result)
        self.assertEqual(result.counterexample, (1, 2, 3))
        self.assertEqual(result.counterexample_labels(self.n5), ("a", "b", "c"))

    def test_modular_and_distributive(self):
        """Test the two laws on stock lattices."""
        self.assertTrue(is_modular(self.m3))
        self.assertFalse(is_distributive(self.m3))
        self.assertFalse(is_modular(self.n5))
        self.assertTrue(is_distributive(boolean(3)))
        self.assertTrue(is_distributive(chain(4)))

    def test_full_count(self):
        """Test that a passing check visits every assignment."""
        result = holds_in(boolean(2), DISTRIBUTIVE_LAW)
        self.assertTrue(result.holds)
        self.assertEqual(result.assignments, 64)
        self.assertIsNone(result.counterexample_labels(boolean(2)))

    def test_dual_law(self):
        """Test that the modular law and its dual agree."""
        lattice = sub_lattice(2, 3)
        self.assertTrue(holds_in(lattice, MODULAR_LAW.dual()).holds)
        self.assertFalse(holds_in(self.n5, MODULAR_LAW.dual()).holds)

    def test_budget(self):
        """Test that large evaluations are refused."""
        with self.assertRaises(BudgetExceeded):
            holds_in(boolean(3), MODULAR_LAW, ToolkitConfig(IDENTITY_BUDGET=100))


class TestWitnesses(unittest.TestCase):
    """Test cases for pentagon and diamond witnesses."""

    def test_find_n5(self):
        """Test the pentagon witness in N5 and its absence in M3."""
        self.assertEqual(find_n5(stock("n5")), (0, 1, 3, 2, 4))
        self.assertIsNone(find_n5(stock("m3")))

    def test_find_m3(self):
        """Test the diamond witness in M3 and its absence in N5."""
        self.assertEqual(find_m3(stock("m3")), (0, 1, 2, 3, 4))
        self.assertIsNone(find_m3(stock("n5")))
        self.assertIsNotNone(find_m3(sub_lattice(2, 3)))


class TestComplementsAndDuality(unittest.TestCase):
    """Test cases for complements and selfduality."""

    def test_relative_complements(self):
        """Test relatively complemented lattices."""
        self.assertTrue(is_relatively_complemented(boolean(3)))
        self.assertTrue(is_relatively_complemented(stock("m3")))
        self.assertFalse(is_relatively_complemented(stock("n5")))
        self.assertIsNotNone(relative_complement_failure(chain(3)))

    def test_complements(self):
        """Test complemented lattices."""
        self.assertTrue(is_complemented(stock("n5")))
        self.assertFalse(is_complemented(chain(3)))

    def test_selfdual(self):
        """Test selfduality of stock lattices."""
        self.assertTrue(is_selfdual(stock("n5")))
        self.assertTrue(is_selfdual(stock("hexagon")))
        self.assertTrue(is_selfdual(boolean(3)))


class TestIdentityTransfer(unittest.TestCase):
    """Test cases for identities through glued sums."""

    def test_transfer(self):
        """Test that the modular law fails in N5 + 2 because it fails in N5."""
        report = identity_transfer_check(stock("n5"), chain(2), MODULAR_LAW)
        self.assertEqual(report.as_tuple(), (False, True, False))
        self.assertTrue(report.consistent)

    def test_transfer_holds(self):
        """Test that distributivity survives gluing two chains."""
        report = identity_transfer_check(chain(3), boolean(2), DISTRIBUTIVE_LAW)
        self.assertEqual(report.as_tuple(), (True, True, True))


if __name__ == '__main__':
    unittest.main()
