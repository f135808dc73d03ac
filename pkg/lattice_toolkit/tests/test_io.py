"""
Test cases for lattice interchange and diagram output.
"""

import io
import json
import os
import tempfile
import unittest

from lattice_toolkit.errors import MalformedInput, NotTransitivelyReduced
from lattice_toolkit.models.lattice import stock
from lattice_toolkit.utils.io import (
    lattice_from_json, lattice_to_json, parse_stock_name, read_lattice, resolve_lattice,
    to_dot, write_dot, write_json, write_png,
)


class TestJson(unittest.TestCase):
    """Test cases for the JSON interchange format."""

    def setUp(self):
        """Set up test fixtures."""
        self.n5 = stock("n5")

    def test_round_trip(self):
        """Test that a lattice survives JSON output and input."""
        restored = lattice_from_json(lattice_to_json(self.n5))
        self.assertTrue(restored.same_as(self.n5))
        self.assertEqual(json.loads(lattice_to_json(self.n5))["elements"], list(self.n5.labels))

    def test_unknown_keys(self):
        """Test strict and lenient handling of extra keys."""
        text = '{"elements": ["0", "1"], "covers": [["0", "1"]], "name": "two"}'
        with self.assertRaises(MalformedInput):
            lattice_from_json(text)
        with self.assertLogs("lattice_toolkit.utils.io", level="WARNING"):
            self.assertEqual(lattice_from_json(text, strict=False).size, 2)

    def test_bad_documents(self):
        """Test malformed documents."""
        for text in ("not json", "[1, 2]", '{"elements": "01"}', '{"elements": ["0"], "covers": [["0"]]}'):
            with self.assertRaises(MalformedInput):
                lattice_from_json(text)

    def test_implied_cover(self):
        """Test that strict input rejects implied covers."""
        text = '{"elements": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"], ["0", "1"]]}'
        with self.assertRaises(NotTransitivelyReduced):
            lattice_from_json(text)
        self.assertEqual(len(lattice_from_json(text, strict=False).covers), 2)

    def test_files(self):
        """Test writing and reading JSON files."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "n5.json")
            write_json(self.n5, path)
            self.assertTrue(read_lattice(path).same_as(self.n5))
            self.assertTrue(resolve_lattice(path).same_as(self.n5))


class TestDiagrams(unittest.TestCase):
    """Test cases for DOT and PNG output."""

    def setUp(self):
        """Set up test fixtures."""
        self.m3 = stock("m3")

    def test_dot(self):
        """Test Graphviz source for M3."""
        dot = to_dot(self.m3, "m3")
        self.assertTrue(dot.startswith("digraph m3 {"))
        self.assertIn("rankdir=BT;", dot)
        self.assertEqual(dot.count("->"), 6)
        self.assertIn('n1 [label="a"];', dot)

    def test_files(self):
        """Test that DOT and PNG files are written."""
        with tempfile.TemporaryDirectory() as tmp:
            dot_path = os.path.join(tmp, "m3.dot")
            png_path = os.path.join(tmp, "m3.png")
            write_dot(self.m3, dot_path)
            write_png(self.m3, png_path, title="M3")
            self.assertGreater(os.path.getsize(dot_path), 0)
            self.assertGreater(os.path.getsize(png_path), 0)


class TestSources(unittest.TestCase):
    """Test cases for resolving lattice sources."""

    def test_stock_names(self):
        """Test stock name parsing."""
        self.assertEqual(parse_stock_name("chain4").size, 4)
        self.assertEqual(parse_stock_name("boolean3").size, 8)
        self.assertEqual(parse_stock_name("MN5").size, 7)
        self.assertEqual(parse_stock_name("sub:2:3").size, 16)
        self.assertEqual(parse_stock_name("hexagon").size, 6)
        with self.assertRaises(MalformedInput):
            parse_stock_name("octagon")

    def test_stdin(self):
        """Test reading JSON from standard input."""
        stdin = io.StringIO(lattice_to_json(stock("n5")))
        self.assertEqual(resolve_lattice("-", stdin=stdin).size, 5)
        stdin = io.StringIO(lattice_to_json(stock("m3")))
        self.assertEqual(resolve_lattice(None, stdin=stdin).size, 5)


if __name__ == '__main__':
    unittest.main()
