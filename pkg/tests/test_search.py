"""Tests for grasshopper.search.

Tests cover:
- Search spec validation
- Exhaustive negatives (square, pentagon and hexagon)
- Exact-target searches, BFS and iterative deepening
- Node caps and partial reports
"""
from __future__ import annotations

import pytest

from grasshopper.configuration import (
    JumpSequence,
    apply_sequence,
    rational_configuration,
    regular_polygon,
    unit_triangle,
)
from grasshopper.constants import SIMILAR_LARGER
from grasshopper.errors import InvalidInputError
from grasshopper.formats import parse_jumps
from grasshopper.search import Goal, SearchSpec, bfs_search, canonicalize, iddfs_search, search
from grasshopper.similarity import classify


# =============================================================================
# Spec validation
# =============================================================================

class TestSearchSpec:
    """Tests for Goal and SearchSpec validation."""

    def test_unknown_goal(self):
        """Only the two goal kinds exist."""
        with pytest.raises(InvalidInputError, match="unknown goal"):
            Goal("smaller")

    def test_exact_target_needs_target(self):
        """exact-target without a configuration is invalid."""
        with pytest.raises(InvalidInputError, match="target"):
            Goal("exact-target")

    def test_depth_and_cap(self, unit_square):
        """Depth and node cap must be positive."""
        with pytest.raises(InvalidInputError, match="max_depth"):
            SearchSpec(unit_square, Goal.similar_larger(), max_depth=0)
        with pytest.raises(InvalidInputError, match="node cap"):
            SearchSpec(unit_square, Goal.similar_larger(), max_depth=2, node_cap=0)

    def test_target_must_match_start(self, unit_square, pentagon):
        """Targets share backend and piece count with the start."""
        with pytest.raises(InvalidInputError, match="pieces"):
            SearchSpec(unit_square, Goal.exact_target(unit_triangle()), max_depth=2)
        with pytest.raises(InvalidInputError):
            SearchSpec(unit_square, Goal.exact_target(pentagon), max_depth=2)

    def test_unknown_strategy(self, unit_square):
        """search() only knows bfs and iddfs."""
        spec = SearchSpec(unit_square, Goal.similar_larger(), max_depth=1)
        with pytest.raises(InvalidInputError, match="unknown strategy"):
            search(spec, strategy="astar")

    def test_canonicalize(self, unit_square, pentagon):
        """Keys are exact and keep piece order."""
        assert canonicalize(unit_square)[1] == ((1, 1), (0, 1))
        assert canonicalize(pentagon)[1] == (-1, 1, 0, 0)
        swapped = unit_square.with_positions(unit_square.positions[::-1])
        assert canonicalize(swapped) != canonicalize(unit_square)


# =============================================================================
# Negative results
# =============================================================================

class TestExhaustiveNegatives:
    """Searches that prove no short sequence exists."""

    @pytest.mark.parametrize("strategy", ["bfs", "iddfs"])
    def test_square_never_grows(self, unit_square, strategy):
        """No sequence of up to 4 jumps enlarges the square."""
        spec = SearchSpec(unit_square, Goal.similar_larger(), max_depth=4)
        report = search(spec, strategy=strategy)
        assert report.found is None
        assert report.exhaustive
        assert report.depth_reached == 4
        assert report.strategy == strategy

    def test_pentagon_depth_two(self, pentagon):
        """Two jumps leave three vertices in place, so no larger pentagon."""
        report = bfs_search(SearchSpec(pentagon, Goal.similar_larger(), max_depth=2))
        assert report.found is None and report.exhaustive

    def test_pentagon_depth_four(self, pentagon):
        """No sequence of up to 4 jumps enlarges the pentagon."""
        report = bfs_search(SearchSpec(pentagon, Goal.similar_larger(), max_depth=4))
        assert report.found is None
        assert report.exhaustive
        assert report.depth_reached == 4
        assert report.nodes_expanded == 3951

    def test_hexagon_never_grows(self):
        """The regular hexagon has no larger image within 3 jumps."""
        report = bfs_search(SearchSpec(regular_polygon(6), Goal.similar_larger(), max_depth=3))
        assert report.found is None and report.exhaustive
        assert report.nodes_expanded == 613

    def test_dedup_prunes(self, unit_square):
        """Deduplication expands fewer nodes for the same answer."""
        with_dedup = bfs_search(SearchSpec(unit_square, Goal.similar_larger(), max_depth=3))
        without = bfs_search(SearchSpec(unit_square, Goal.similar_larger(), max_depth=3, dedup=False))
        assert with_dedup.found is None and without.found is None
        assert with_dedup.exhaustive and without.exhaustive
        assert with_dedup.nodes_expanded < without.nodes_expanded
        # 1 + 12 + 12^2 nodes of depth < 3
        assert without.nodes_expanded == 157


# =============================================================================
# Positive results
# =============================================================================

class TestExactTarget:
    """Searches for a known reachable configuration."""

    def test_start_is_target(self, unit_square):
        """The empty sequence is found without expanding anything."""
        report = search(SearchSpec(unit_square, Goal.exact_target(unit_square), max_depth=3))
        assert report.found == JumpSequence()
        assert report.nodes_expanded == 0
        assert not report.exhaustive

    @pytest.mark.parametrize("jumps", ["1/0", "1/0 2/1", "3/2 0/3 2/1"])
    def test_reaches_target(self, unit_square, jumps):
        """BFS finds a shortest sequence that replays onto the target."""
        target = apply_sequence(unit_square, parse_jumps(jumps))
        report = bfs_search(SearchSpec(unit_square, Goal.exact_target(target), max_depth=3))
        assert report.found is not None
        assert len(report.found) <= len(jumps.split())
        assert apply_sequence(unit_square, report.found) == target
        assert report.depth_reached == len(report.found)

    def test_single_jump_is_lexicographic_first(self, unit_square):
        """Moves are expanded in (mover, over) order."""
        target = apply_sequence(unit_square, parse_jumps("1/0"))
        report = bfs_search(SearchSpec(unit_square, Goal.exact_target(target), max_depth=1))
        assert str(report.found) == "1/0"

    @pytest.mark.parametrize("jumps", ["2/1 3/0", "3/2 0/3 2/1"])
    def test_strategies_agree(self, unit_square, jumps):
        """BFS and iterative deepening return the same shortest sequence."""
        target = apply_sequence(unit_square, parse_jumps(jumps))
        spec = SearchSpec(unit_square, Goal.exact_target(target), max_depth=3)
        bfs = bfs_search(spec)
        iddfs = iddfs_search(spec)
        assert str(bfs.found) == str(iddfs.found)

    def test_pentagon_target(self, pentagon):
        """Cyclotomic states are searched exactly."""
        target = apply_sequence(pentagon, parse_jumps("4/0 4/3"))
        report = search(SearchSpec(pentagon, Goal.exact_target(target), max_depth=2), strategy="iddfs")
        assert apply_sequence(pentagon, report.found) == target


class TestSimilarLarger:
    """Similar-larger searches on a configuration without symmetry."""

    @pytest.mark.parametrize("strategy", ["bfs", "iddfs"])
    def test_any_hit_is_confirmed(self, strategy):
        """Whatever is found really is a larger similar copy."""
        start = rational_configuration([(0, 0), (1, 0), (3, 0)])
        report = search(SearchSpec(start, Goal.similar_larger(), max_depth=3), strategy=strategy)
        if report.found is not None:
            assert classify(start, apply_sequence(start, report.found)) == SIMILAR_LARGER
        else:
            assert report.exhaustive


# =============================================================================
# Node caps
# =============================================================================

class TestNodeCap:
    """Capped searches return partial reports."""

    def test_bfs_cap(self, unit_square):
        """The dedup set is bounded by the cap."""
        report = bfs_search(SearchSpec(unit_square, Goal.similar_larger(), max_depth=8, node_cap=50))
        assert report.found is None
        assert not report.exhaustive
        assert report.depth_reached < 8

    def test_iddfs_cap(self, unit_square):
        """Expanded nodes never exceed the cap."""
        report = iddfs_search(SearchSpec(unit_square, Goal.similar_larger(), max_depth=8, node_cap=30))
        assert report.found is None
        assert not report.exhaustive
        assert report.nodes_expanded <= 30

    def test_report_dict(self, unit_square):
        """Reports serialize with stable keys."""
        report = bfs_search(SearchSpec(unit_square, Goal.similar_larger(), max_depth=1))
        data = report.to_dict()
        assert data == {
            "found": None,
            "length": None,
            "nodes_expanded": 1,
            "depth_reached": 1,
            "exhaustive": True,
            "strategy": "bfs",
        }
