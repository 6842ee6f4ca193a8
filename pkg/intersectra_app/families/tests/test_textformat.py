"""Tests for the family text format."""

import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from families.constructions import seven_point_family
from families.exceptions import FamilyFormatError
from families.textformat import dump_family, load_family, parse_family, save_family

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class ParseFamilyTests(SimpleTestCase):
    """Test cases for parse_family."""

    def test_header_and_comments(self):
        """Test that comments and blank lines are skipped."""
        family = parse_family("# triangle\n\nn=3 r=2\n1 2\n1 3\n\n2 3\n")
        self.assertEqual(family.n, 3)
        self.assertEqual(family.rank, 2)
        self.assertEqual(family.as_lists(), [[1, 2], [1, 3], [2, 3]])

    def test_without_header(self):
        """Test that the ground set defaults to the largest element."""
        family = parse_family("1 2\n3 4\n")
        self.assertEqual(family.n, 4)
        self.assertEqual(family.rank, 2)

    def test_header_without_rank(self):
        """Test that the rank is optional in the header."""
        family = parse_family("n=5\n1\n1 2\n")
        self.assertEqual(family.n, 5)
        self.assertIsNone(family.rank)

    def test_not_increasing(self):
        """Test that the offending line is reported."""
        with self.assertRaisesMessage(FamilyFormatError, "line 3"):
            parse_family("n=4\n1 2\n3 1\n")

    def test_element_out_of_range(self):
        """Test that elements above n are rejected with their line."""
        with self.assertRaises(FamilyFormatError) as ctx:
            parse_family("n=3\n1 2\n2 4\n")
        self.assertEqual(ctx.exception.line, 3)

    def test_zero_element(self):
        """Test that labels are 1-based."""
        with self.assertRaises(FamilyFormatError):
            parse_family("0 1\n")

    def test_wrong_rank(self):
        """Test that a set of the wrong size breaks the declared rank."""
        with self.assertRaisesMessage(FamilyFormatError, "line 2"):
            parse_family("n=4 r=2\n1 2 3\n")

    def test_duplicate_set(self):
        """Test that a repeated set is an error."""
        with self.assertRaisesMessage(FamilyFormatError, "duplicate set"):
            parse_family("1 2\n1 2\n")

    def test_late_header(self):
        """Test that the header must come first."""
        with self.assertRaises(FamilyFormatError):
            parse_family("1 2\nn=4\n")

    def test_garbage(self):
        """Test that non-integer tokens are rejected."""
        with self.assertRaisesMessage(FamilyFormatError, "expected integers"):
            parse_family("n=4\n1 x\n")

    def test_empty_text(self):
        """Test that a file with neither header nor sets is rejected."""
        with self.assertRaises(FamilyFormatError):
            parse_family("# nothing here\n")


class DumpFamilyTests(SimpleTestCase):
    """Test cases for dump_family, save_family and load_family."""

    def test_fixture_reproduced_byte_for_byte(self):
        """Test that a canonical fixture survives parse and dump unchanged apart from comments."""
        text = (FIXTURES / "seven_point.txt").read_text(encoding="utf-8")
        body = "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))
        self.assertEqual(dump_family(parse_family(text)), body)

    def test_fixture_is_seven_point_family(self):
        """Test that the fixture holds the six triples."""
        self.assertEqual(load_family(FIXTURES / "seven_point.txt"), seven_point_family())

    def test_save_and_load(self):
        """Test writing a family to disk and reading it back."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "family.txt"
            save_family(path, seven_point_family())
            self.assertEqual(load_family(path), seven_point_family())
            self.assertTrue(path.read_text(encoding="utf-8").startswith("n=7 r=3\n"))
