"""Tests for grasshopper.similarity.

Tests cover:
- Exact similarity detection for rational and cyclotomic point sets
- Verdicts (larger, not larger, not similar)
- Regular polygon recognition
- Complex multipliers on the pentagon
"""
from __future__ import annotations

from fractions import Fraction

import pytest

from grasshopper.configuration import (
    Backend,
    Configuration,
    JumpSequence,
    apply_sequence,
    rational_configuration,
    regular_polygon,
    regular_polygon_with_center,
    unit_triangle,
)
from grasshopper.constants import NOT_SIMILAR, PENTAGON_SEQUENCE, SIMILAR_LARGER, SIMILAR_NOT_LARGER
from grasshopper.errors import InvalidInputError
from grasshopper.exact_algebra import CyclotomicInt
from grasshopper.formats import parse_jumps
from grasshopper.similarity import classify, complex_multiplier, find_similarity, is_regular_polygon


# =============================================================================
# Rational configurations
# =============================================================================

class TestRationalSimilarity:
    """Tests for similarity of rational point sets."""

    def test_doubled_square(self, unit_square):
        """A square twice the size is similar and larger."""
        big = rational_configuration([(0, 0), (2, 0), (2, 2), (0, 2)])
        sim = find_similarity(unit_square, big)
        assert sim is not None
        assert sim.verdict == SIMILAR_LARGER
        assert sim.scale_float == pytest.approx(2.0)

    def test_halved_square(self, unit_square):
        """Shrinking gives similar_not_larger."""
        small = rational_configuration([(0, 0), ("1/2", 0), ("1/2", "1/2"), (0, "1/2")])
        sim = find_similarity(unit_square, small)
        assert sim.verdict == SIMILAR_NOT_LARGER
        assert sim.scale_float == pytest.approx(0.5)

    def test_relabeled_congruent(self, unit_square):
        """Any relabeling of the same point set has scale 1."""
        shuffled = rational_configuration([(1, 1), (0, 1), (0, 0), (1, 0)])
        assert classify(unit_square, shuffled) == SIMILAR_NOT_LARGER
        assert find_similarity(unit_square, shuffled).comparison == 0

    def test_rotated_by_45_degrees(self, unit_square):
        """The square on the diagonals of a larger square has scale sqrt(2)."""
        tilted = rational_configuration([(0, 0), (1, 1), (0, 2), (-1, 1)])
        sim = find_similarity(unit_square, tilted)
        assert sim.verdict == SIMILAR_LARGER
        assert sim.scale_float == pytest.approx(2**0.5)
        assert sim.scale_num / sim.scale_den == 2

    def test_rectangle_is_not_similar(self, unit_square):
        """Unequal side ratios are detected."""
        rectangle = rational_configuration([(0, 0), (2, 0), (2, 1), (0, 1)])
        assert classify(unit_square, rectangle) == NOT_SIMILAR

    def test_mapping_is_consistent(self):
        """dst[mapping[k]] is the image of src piece k."""
        src = unit_triangle()
        dst = rational_configuration([(0, 3), (0, 0), (3, 0)])
        sim = find_similarity(src, dst)
        assert sim is not None
        # the right angle of src sits at piece 0, in dst at piece 1
        assert sim.mapping[0] == 1
        assert sim.scale_num / sim.scale_den == Fraction(9)

    def test_three_dimensions(self):
        """Similarity is dimension independent."""
        src = rational_configuration([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        dst = rational_configuration([(0, 0, 0), (0, 0, 3), (0, 3, 0), (3, 0, 0)])
        assert classify(src, dst) == SIMILAR_LARGER

    def test_degenerate(self):
        """All pieces on one point are similar only to another such set."""
        point = rational_configuration([(1, 1), (1, 1), (1, 1)])
        other = rational_configuration([(5, 0), (5, 0), (5, 0)])
        sim = find_similarity(point, other)
        assert sim is not None and sim.verdict == SIMILAR_NOT_LARGER
        assert sim.scale_float == pytest.approx(1.0)
        assert classify(point, unit_triangle()) == NOT_SIMILAR

    def test_size_mismatch(self, unit_square):
        """Different piece counts are never similar."""
        assert find_similarity(unit_square, unit_triangle()) is None

    def test_backend_mismatch(self, unit_square, pentagon):
        """Comparing across backends is invalid input."""
        with pytest.raises(InvalidInputError, match="cannot compare"):
            find_similarity(unit_square, pentagon)


# =============================================================================
# Cyclotomic configurations
# =============================================================================

class TestPentagon:
    """Tests for the pentagon and its 14-jump enlargement."""

    @pytest.fixture
    def final(self, pentagon):
        return apply_sequence(pentagon, parse_jumps(PENTAGON_SEQUENCE))

    def test_fourteen_jumps_enlarge(self, pentagon, final):
        """The classical sequence scales by sqrt(5) + 2."""
        sim = find_similarity(pentagon, final)
        assert sim.verdict == SIMILAR_LARGER
        assert sim.scale_float == pytest.approx(4.2360679775, abs=1e-9)
        assert float(sim.scale(dps=40)) == pytest.approx(5**0.5 + 2, abs=1e-12)

    def test_multiplier(self, pentagon, final):
        """Final positions are u * p_k with u = 1 - 2 zeta^2 - 2 zeta^3."""
        mu = complex_multiplier(pentagon, final, tuple(range(5)))
        assert mu is not None
        assert mu.coeffs == (1, 0, -2, -2)
        assert mu.abs_sq().coeffs == (5, 0, -8, -8)

    def test_mirror_has_no_multiplier(self, pentagon):
        """Orientation-reversing relabelings are not complex multiplications."""
        mirrored = pentagon.with_positions(p.conj() for p in pentagon.positions)
        assert classify(pentagon, mirrored) == SIMILAR_NOT_LARGER
        assert complex_multiplier(pentagon, mirrored, tuple(range(5))) is None

    def test_empty_sequence(self, pentagon):
        """No jumps, no enlargement."""
        assert classify(pentagon, apply_sequence(pentagon, JumpSequence())) == SIMILAR_NOT_LARGER

    def test_multiplier_needs_cyclotomic(self, unit_square):
        """Rational configurations have no complex multiplier."""
        with pytest.raises(InvalidInputError, match="cyclotomic"):
            complex_multiplier(unit_square, unit_square, (0, 1, 2, 3))


class TestRegularPolygon:
    """Tests for is_regular_polygon."""

    @pytest.mark.parametrize("n_pieces", [3, 5, 7, 8, 12])
    def test_standard_polygons(self, n_pieces):
        """p_k = zeta^k - 1 is regular."""
        assert is_regular_polygon(regular_polygon(n_pieces))

    def test_embedded_triangle(self):
        """A triangle in Z[zeta_6] is recognized."""
        assert is_regular_polygon(regular_polygon(3, order=6))

    def test_hexagon_in_odd_ring(self):
        """A hexagon built from -zeta_3^2 in Z[zeta_3] is recognized."""
        zeta_6 = -CyclotomicInt.zeta(3, 2)
        hexagon = Configuration(2, Backend.cyclotomic(3), tuple(zeta_6**k - 1 for k in range(6)))
        assert is_regular_polygon(hexagon)

    def test_missing_root_of_unity(self):
        """Four points in Z[zeta_5] can never form a square."""
        zeta = CyclotomicInt.zeta(5)
        quad = Configuration(2, Backend.cyclotomic(5), tuple(zeta**k - 1 for k in range(4)))
        assert not is_regular_polygon(quad)

    def test_square(self, unit_square):
        """The unit square is the only rational case."""
        assert is_regular_polygon(unit_square)
        assert not is_regular_polygon(rational_configuration([(0, 0), (2, 0), (2, 1), (0, 1)]))
        assert not is_regular_polygon(unit_triangle())

    def test_with_center(self):
        """A polygon plus its center is not a polygon."""
        assert not is_regular_polygon(regular_polygon_with_center(5))

    def test_relabeled_pentagon(self, pentagon):
        """Vertex order does not matter."""
        star = pentagon.with_positions(pentagon.positions[k] for k in (0, 2, 4, 1, 3))
        assert is_regular_polygon(star)
