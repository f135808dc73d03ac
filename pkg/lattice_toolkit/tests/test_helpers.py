"""
Test cases for configuration, helpers and the union-find forest.
"""

import os
import unittest
from unittest import mock

import numpy as np

from lattice_toolkit.config import ToolkitConfig, get_config, set_config
from lattice_toolkit.utils.helpers import (
    bools_from_mask, count_down_sets, format_blocks, format_cycles, format_profile,
    iter_bits, mask_from_bools, popcount, set_partitions,
)
from lattice_toolkit.utils.union_find import UnionFind


class TestConfig(unittest.TestCase):
    """Test cases for the toolkit configuration."""

    def test_defaults(self):
        """Test default limits."""
        config = ToolkitConfig()
        self.assertEqual(config.MAX_ELEMENTS, 5000)
        self.assertEqual(config.MAX_PRIME, 255)
        self.assertEqual(config.RANDOM_SEED, 42)

    def test_overrides(self):
        """Test that None overrides are ignored."""
        config = ToolkitConfig().with_overrides(MAX_ELEMENTS=10, RANDOM_SEED=None)
        self.assertEqual(config.MAX_ELEMENTS, 10)
        self.assertEqual(config.RANDOM_SEED, 42)

    def test_from_env(self):
        """Test environment overrides."""
        with mock.patch.dict(os.environ, {"LATTICE_TOOLKIT_CORPUS_SIZE": "7"}):
            config = ToolkitConfig.from_env(dotenv_path=os.devnull)
        self.assertEqual(config.CORPUS_SIZE, 7)

    def test_active_config(self):
        """Test replacing the process-wide config."""
        previous = get_config()
        try:
            set_config(ToolkitConfig(MAX_ELEMENTS=3))
            self.assertEqual(get_config().MAX_ELEMENTS, 3)
            self.assertIs(get_config(previous), previous)
        finally:
            set_config(previous)


class TestBitsets(unittest.TestCase):
    """Test cases for bitset helpers."""

    def test_round_trip(self):
        """Test packing and unpacking boolean vectors."""
        row = np.array([True, False, True, True, False, False, False, False, True])
        mask = mask_from_bools(row)
        self.assertEqual(mask, 0b100001101)
        np.testing.assert_array_equal(bools_from_mask(mask, 9), row)
        self.assertEqual(list(iter_bits(mask)), [0, 2, 3, 8])
        self.assertEqual(popcount(mask), 4)

    def test_down_sets(self):
        """Test down-set counts of small posets."""
        antichain = np.eye(3, dtype=bool)
        self.assertEqual(count_down_sets(antichain), 8)
        chain3 = np.triu(np.ones((3, 3), dtype=bool))
        self.assertEqual(count_down_sets(chain3), 4)
        self.assertEqual(count_down_sets(np.zeros((0, 0), dtype=bool)), 1)

    def test_partitions(self):
        """Test Bell numbers from restricted growth strings."""
        self.assertEqual([len(list(set_partitions(n))) for n in range(6)], [1, 1, 2, 5, 15, 52])


class TestFormatting(unittest.TestCase):
    """Test cases for display helpers."""

    def setUp(self):
        """Set up test fixtures."""
        self.labels = ["0", "a", "b", "c", "1"]

    def test_blocks(self):
        """Test partition formatting."""
        self.assertEqual(format_blocks([(0, 1, 3), (2, 4)], self.labels), "{0,a,c}{b,1}")
        self.assertEqual(format_blocks([(0,), (1,)], self.labels), "Δ")
        self.assertEqual(format_blocks([(0,), (1, 2)], self.labels, include_singletons=True), "{0}{a,b}")

    def test_cycles(self):
        """Test cycle notation."""
        self.assertEqual(format_cycles((0, 2, 3, 1, 4), self.labels), "(a b c)")
        self.assertEqual(format_cycles((0, 1, 2), self.labels), "()")

    def test_profile(self):
        """Test the count triple."""
        self.assertEqual(format_profile((5, 5, 5)), "⟨5, 5, 5⟩")


class TestUnionFind(unittest.TestCase):
    """Test cases for the disjoint-set forest."""

    def test_union(self):
        """Test merging and block listing."""
        uf = UnionFind(5)
        self.assertTrue(uf.union(0, 3))
        self.assertTrue(uf.union(4, 2))
        self.assertFalse(uf.union(3, 0))
        self.assertTrue(uf.same(2, 4))
        self.assertEqual(uf.blocks(), ((0, 3), (1,), (2, 4)))


if __name__ == '__main__':
    unittest.main()
