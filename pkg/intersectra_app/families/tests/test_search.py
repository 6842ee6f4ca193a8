"""Tests for the exact search."""

import math
from unittest.mock import patch

import pytest
from django.test import SimpleTestCase, override_settings

from families.canonical import is_isomorphic
from families.constructions import star_family, triangle_family
from families.core import SetFamily, is_intersecting, is_maximal, k_intersections, star_cover_violations
from families.exceptions import CanonicalizationLimitError, ParameterError, SearchError
from families.oracle import clique_beta
from families.search import (
    SearchConfig,
    Symmetry,
    alpha_search,
    beta_search,
    ekr_check,
    enumerate_maximal_families,
    split_units,
    universe,
)

UNLIMITED = SearchConfig(node_budget=0)
UNLIMITED_OFF = SearchConfig(node_budget=0, symmetry=Symmetry.OFF)


class SearchConfigTests(SimpleTestCase):
    """Test cases for SearchConfig."""

    def test_rejects_negative_budget(self):
        """Test that the node budget must be non-negative."""
        with self.assertRaises(ParameterError):
            SearchConfig(node_budget=-1)

    def test_rejects_zero_width(self):
        """Test that at least one worker is required."""
        with self.assertRaises(ParameterError):
            SearchConfig(parallel_width=0)

    def test_rejects_unknown_symmetry(self):
        """Test that symmetry is on or off."""
        with self.assertRaises(ParameterError):
            SearchConfig(symmetry="maybe")

    @override_settings(
        INTERSECTRA={
            "NODE_BUDGET": 500,
            "CANONICAL_LIMIT": 9,
            "DEDUP_DEPTH": 1,
            "PARALLEL_WIDTH": 2,
            "STAR_COVER_SAMPLES": 5,
            "RANDOM_SEED": 1,
            "UNIT_TIMEOUT": None,
        }
    )
    def test_from_settings(self):
        """Test that settings give the defaults and explicit values win."""
        config = SearchConfig.from_settings(parallel_width=None, symmetry=Symmetry.OFF)
        self.assertEqual(config.node_budget, 500)
        self.assertEqual(config.canonical_limit, 9)
        self.assertEqual(config.parallel_width, 2)
        self.assertEqual(config.symmetry, Symmetry.OFF)
        self.assertFalse(config.symmetric)


class BetaSearchTests(SimpleTestCase):
    """Test cases for beta_search on small instances."""

    def assert_certified(self, result):
        """The witness is an intersecting r-uniform family realizing the value."""
        self.assertTrue(is_intersecting(result.witness))
        self.assertEqual(result.witness.rank, result.r)
        self.assertEqual(len(k_intersections(result.witness, result.k)), result.value)

    def test_pairs_on_four_points(self):
        """Test that star and triangle both give 3."""
        result = beta_search(4, 2, 2, UNLIMITED)
        self.assertEqual(result.value, 3)
        self.assertTrue(result.optimal)
        self.assertEqual(result.parameters, (4, 2, 2))
        self.assert_certified(result)

    def test_ekr_value(self):
        """Test that the largest intersecting family of 3-sets on [6] has 10 members."""
        result = beta_search(6, 3, 3, UNLIMITED)
        self.assertEqual(result.value, math.comb(5, 2))
        self.assertTrue(result.optimal)
        self.assert_certified(result)

    def test_singletons_of_pairs(self):
        """Test that pairs realize at most three singletons."""
        for n in (4, 5, 6):
            with self.subTest(n=n):
                result = beta_search(n, 2, 1, UNLIMITED)
                self.assertEqual(result.value, 3)
                self.assertTrue(result.optimal)
                self.assertTrue(is_isomorphic(result.witness, triangle_family().lifted(n)))

    def test_symmetry_does_not_change_the_answer(self):
        """Test that value and witness agree with symmetry on and off."""
        for n, r, k in ((4, 2, 1), (5, 2, 2), (5, 3, 1), (5, 3, 2), (6, 3, 1), (6, 3, 2)):
            with self.subTest(n=n, r=r, k=k):
                on = beta_search(n, r, k, UNLIMITED)
                off = beta_search(n, r, k, UNLIMITED_OFF)
                self.assertEqual(on.value, off.value)
                self.assertEqual(on.witness, off.witness)

    def test_matches_clique_oracle_below_full_rank(self):
        """Test k < r against the maximal cliques of the intersection graph."""
        for n, r, k in ((4, 2, 1), (5, 3, 2), (6, 3, 1), (6, 3, 2), (6, 4, 2), (6, 4, 3)):
            expected = clique_beta(n, r, k)
            for config in (UNLIMITED, UNLIMITED_OFF):
                with self.subTest(n=n, r=r, k=k, symmetry=config.symmetry):
                    result = beta_search(n, r, k, config)
                    self.assertEqual(result.value, expected)
                    self.assertTrue(result.optimal)
                    self.assertEqual(len(k_intersections(result.witness, k)), expected)

    def test_witness_is_canonical(self):
        """Test that the witness does not depend on the order units were searched in."""
        first = beta_search(5, 2, 2, UNLIMITED)
        second = beta_search(5, 2, 2, UNLIMITED)
        self.assertEqual(first.witness, second.witness)
        self.assertEqual(first.nodes_expanded, second.nodes_expanded)

    def test_budget_exhaustion(self):
        """Test that a spent budget returns the best family so far, flagged."""
        result = beta_search(6, 3, 1, SearchConfig(node_budget=5, symmetry=Symmetry.OFF))
        self.assertFalse(result.optimal)
        self.assertGreaterEqual(result.value, 1)
        self.assert_certified(result)

    def test_all_optima(self):
        """Test that both optimal classes of 2-sets on [4] are reported."""
        config = SearchConfig(node_budget=0, report_all_optima=True)
        result = beta_search(4, 2, 2, config)
        self.assertEqual(len(result.classes), 2)
        sizes = sorted(len(family) for family in result.classes)
        self.assertEqual(sizes, [3, 3])

    def test_check_bounds(self):
        """Test that the admissible bound is never undercut."""
        config = SearchConfig(node_budget=0, check_bounds=True)
        for n, r, k in ((5, 2, 1), (6, 3, 2)):
            self.assertEqual(beta_search(n, r, k, config).bound_violations, 0)

    def test_parameter_ranges(self):
        """Test that k <= r <= n is enforced."""
        with self.assertRaises(ParameterError):
            beta_search(4, 2, 3, UNLIMITED)
        with self.assertRaises(ParameterError):
            beta_search(2, 3, 1, UNLIMITED)

    def test_canonicalization_limit(self):
        """Test that symmetry on refuses ground sets above the limit."""
        with self.assertRaisesMessage(CanonicalizationLimitError, "canonicalization limit"):
            beta_search(11, 1, 1, UNLIMITED)
        self.assertEqual(beta_search(11, 1, 1, UNLIMITED_OFF).value, 1)

    def test_certification_failure(self):
        """Test that a witness failing the recount raises SearchError."""
        with patch("families.search.k_intersections", return_value=()):
            with self.assertRaises(SearchError):
                beta_search(4, 2, 2, UNLIMITED)

    def test_parallel_width_is_invisible(self):
        """Test that batching units over workers changes nothing in the result."""
        single = beta_search(6, 3, 2, UNLIMITED)
        parallel = beta_search(6, 3, 2, SearchConfig(node_budget=0, parallel_width=3))
        self.assertEqual(
            (single.value, single.optimal, single.witness, single.nodes_expanded),
            (parallel.value, parallel.optimal, parallel.witness, parallel.nodes_expanded),
        )

    def test_parallel_dispatch_uses_celery(self):
        """Test that width > 1 hands the units to the Celery task."""
        with patch("families.tasks.search_units") as task, patch("celery.group") as group:
            group.return_value.apply_async.return_value.join.return_value = []
            beta_search(5, 2, 1, SearchConfig(node_budget=0, parallel_width=2, symmetry=Symmetry.OFF))
        self.assertEqual(task.s.call_count, 2)
        group.assert_called_once()


class AlphaSearchTests(SimpleTestCase):
    """Test cases for alpha_search."""

    def test_rank_one(self):
        """Test that distinct singletons are disjoint."""
        result = alpha_search(1, 3, UNLIMITED)
        self.assertEqual(result.value, 1)
        self.assertTrue(result.optimal)

    def test_rank_two(self):
        """Test the triangle value."""
        result = alpha_search(2, 5, UNLIMITED)
        self.assertEqual(result.value, 3)
        self.assertEqual(result.parameters, (5, 2, 1))

    @pytest.mark.slow
    def test_rank_three(self):
        """Test that triples on [7] realize at most seven singletons."""
        result = alpha_search(3, 7, SearchConfig(node_budget=10**8))
        self.assertEqual(result.value, 7)
        self.assertTrue(result.optimal)
        self.assertEqual(len(k_intersections(result.witness, 1)), 7)


@pytest.mark.slow
class SevenPointSearchTests(SimpleTestCase):
    """Exhaustive searches over [7]^(3)."""

    def test_ekr_on_seven_points(self):
        """Test the Erdős–Ko–Rado value C(6, 2) = 15."""
        result = beta_search(7, 3, 3, SearchConfig(node_budget=10**8))
        self.assertEqual(result.value, 15)
        self.assertTrue(result.optimal)

    def test_two_intersections(self):
        """Test that the up-closure of the triangle is matched or beaten."""
        result = beta_search(7, 3, 2, SearchConfig(node_budget=10**8))
        self.assertEqual(result.value, 15)
        self.assertTrue(result.optimal)


class EnumerationTests(SimpleTestCase):
    """Test cases for enumerate_maximal_families and ekr_check."""

    def test_triangle_is_the_only_family_on_three_points(self):
        """Test that all 2-sets of [3] form the single maximal family."""
        families = list(enumerate_maximal_families(3, 2, UNLIMITED))
        self.assertEqual([family.as_lists() for family in families], [[[1, 2], [1, 3], [2, 3]]])

    def test_classes_on_four_points(self):
        """Test that star and triangle are the two classes."""
        stream = enumerate_maximal_families(4, 2, UNLIMITED)
        families = list(stream)
        self.assertTrue(stream.complete)
        self.assertEqual(len(families), 2)
        self.assertTrue(any(is_isomorphic(family, star_family(4, 2)) for family in families))
        self.assertTrue(any(is_isomorphic(family, triangle_family().lifted(4)) for family in families))

    def test_labeled_families_on_four_points(self):
        """Test that symmetry off lists the 4 stars and 4 triangles."""
        families = list(enumerate_maximal_families(4, 2, UNLIMITED_OFF))
        self.assertEqual(len(families), 8)
        self.assertEqual(len(set(families)), 8)

    def test_classes_on_five_points(self):
        """Test that 2-sets on [5] give the star on four leaves and the triangle."""
        families = list(enumerate_maximal_families(5, 2, UNLIMITED))
        self.assertEqual(sorted(len(family) for family in families), [3, 4])

    def test_every_family_is_maximal_and_star_covered(self):
        """Test that emitted families are maximal and have no star-cover violations."""
        for family in enumerate_maximal_families(6, 3, UNLIMITED):
            self.assertTrue(is_maximal(family, 6, 3))
            self.assertEqual(star_cover_violations(family), [])

    def test_incomplete_stream(self):
        """Test that a spent budget flags the stream as incomplete."""
        stream = enumerate_maximal_families(6, 3, SearchConfig(node_budget=3, symmetry=Symmetry.OFF))
        list(stream)
        self.assertFalse(stream.complete)

    def test_ekr_check(self):
        """Test the three small Erdős–Ko–Rado instances."""
        for n, r, size, classes in ((4, 2, 3, 2), (5, 2, 4, 1), (6, 3, 10, None)):
            with self.subTest(n=n, r=r):
                report = ekr_check(n, r, UNLIMITED)
                self.assertEqual(report.bound, math.comb(n - 1, r - 1))
                self.assertEqual(report.max_size, size)
                self.assertTrue(report.complete)
                self.assertTrue(report.holds)
                if classes is not None:
                    self.assertEqual(report.attaining_classes, classes)

    def test_ekr_check_needs_large_ground_set(self):
        """Test that n < 2r is rejected."""
        with self.assertRaises(ParameterError):
            ekr_check(5, 3, UNLIMITED)


class UniverseTests(SimpleTestCase):
    """Test cases for the index tables and unit splitting."""

    def test_value_counts_distinct_intersections(self):
        """Test the value of the triangle inside [4]^(2)."""
        space = universe(4, 2, 1)
        chosen = space.chosen_of(triangle_family().lifted(4))
        self.assertEqual(space.value(chosen), 3)
        self.assertEqual(space.family(chosen), triangle_family().lifted(4))

    def test_value_at_full_rank_is_size(self):
        """Test that |A<r>| = |A|."""
        space = universe(5, 2, 2)
        self.assertEqual(space.value(space.chosen_of(star_family(5, 2))), 4)

    def test_symmetric_units_are_deduplicated(self):
        """Test that relabeled root children are searched once."""
        space = universe(5, 2, 1)
        on, _ = split_units(space, UNLIMITED)
        off, _ = split_units(space, UNLIMITED_OFF)
        self.assertLess(len(on), len(off))

    def test_single_member_universe(self):
        """Test the degenerate universe [r]^(r)."""
        result = beta_search(3, 3, 2, UNLIMITED)
        self.assertEqual(result.value, 0)
        self.assertEqual(result.witness, SetFamily.of(3, [(1, 2, 3)]))
