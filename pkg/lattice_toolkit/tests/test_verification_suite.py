"""
Test cases for the acceptance check report.
"""

import unittest

from lattice_toolkit.analysis.verification_suite import COLUMNS, VerificationSuite
from lattice_toolkit.config import ToolkitConfig
from lattice_toolkit.errors import InvalidParameter


class TestVerificationSuite(unittest.TestCase):
    """Test cases for VerificationSuite on a small corpus."""

    def setUp(self):
        """Set up test fixtures."""
        self.config = ToolkitConfig(CORPUS_SIZE=5, CORPUS_MAX_ELEMENTS=6, CORPUS_PAIRS=10, TOWER_STAGES=2)
        self.suite = VerificationSuite(self.config)

    def test_corpus(self):
        """Test that the corpus holds the stock lattices and a fixed-seed sample."""
        corpus = self.suite.corpus
        self.assertEqual(len(corpus), 7 + 5)
        self.assertTrue(all(lattice.size <= 6 for lattice in corpus[7:]))
        again = VerificationSuite(self.config).corpus
        self.assertEqual([lattice.covers for lattice in corpus], [lattice.covers for lattice in again])

    def test_cheap_checks(self):
        """Test that a few inexpensive checks pass and are reported in order."""
        report = self.suite.run(["theta_family", "boolean_congruences", "freese_composite"])
        self.assertEqual(list(report.columns), COLUMNS)
        self.assertEqual(list(report["check"]),
                         ["boolean_congruences", "freese_composite", "theta_family"])
        self.assertTrue((report["result"] == "PASS").all())
        self.assertTrue((report["seconds"] >= 0).all())

    def test_corpus_checks(self):
        """Test the checks that sweep the random corpus."""
        report = self.suite.run(["oracle", "glued_sums", "ideals_filters", "modularity"])
        self.assertEqual(len(report), 4)
        self.assertTrue((report["result"] == "PASS").all(), report.to_string())

    def test_structural_checks(self):
        """Test the subspace, M3-cap and rigid-lattice checks."""
        report = self.suite.run(["subspace_counts", "m3_cap_transport", "rigid_pipeline"])
        self.assertTrue((report["result"] == "PASS").all(), report.to_string())
        rigid = report.loc[report["check"] == "rigid_pipeline", "detail"].iloc[0]
        self.assertIn("rigid simple sizes [2, 7, 8]", rigid)

    def test_tower(self):
        """Test the tower check for a couple of stages."""
        report = self.suite.run(["tower"])
        self.assertEqual(report.loc[0, "result"], "PASS")
        self.assertIn("stages 0..2", report.loc[0, "detail"])

    def test_unknown_check(self):
        """Test that unknown check names are rejected."""
        with self.assertRaises(InvalidParameter):
            self.suite.run(["no_such_check"])

    def test_failure_is_reported(self):
        """Test that an exception inside a check becomes a FAIL row."""
        suite = VerificationSuite(self.config.with_overrides(MAX_ELEMENTS=4))
        report = suite.run(["subspace_counts"])
        self.assertEqual(report.loc[0, "result"], "FAIL")
        self.assertIn("SizeLimitExceeded", report.loc[0, "detail"])


if __name__ == '__main__':
    unittest.main()
