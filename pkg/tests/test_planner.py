"""Tests for grasshopper.planner.

Tests cover:
- The rotation matrix M and the power sums B_k
- Index selection and the impossible polygons
- Enlargement plans for small N, re-simulated exactly
- Verification and certification of user-supplied matrices
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

import mpmath
import pytest
import sympy

from grasshopper.configuration import apply_matrix, apply_sequence, regular_polygon, translate
from grasshopper.constants import SIMILAR_LARGER, SIMILAR_NOT_LARGER
from grasshopper.decomposer import is_member
from grasshopper.errors import ImpossibleError, InvalidCertificateError, InvalidInputError, VerificationError
from grasshopper.exact_algebra import CyclotomicInt, IntMatrix, det, mod2_order, reduce_mod2
from grasshopper.planner import (
    build_B,
    build_M,
    certify_matrix,
    choose_index,
    plan_enlargement,
    polygon_scale,
    side_multiplier,
    verify_similarity_enlargement,
)
from grasshopper.similarity import find_similarity

GOLDEN = (1 + 5**0.5) / 2


# =============================================================================
# M and B_k
# =============================================================================

class TestRotationMatrix:
    """Tests for build_M and build_B."""

    def test_small_M(self):
        """First row -1, ones below the diagonal."""
        assert build_M(1).tolist() == [[-1]]
        assert build_M(3).tolist() == [[-1, -1, -1], [1, 0, 0], [0, 1, 0]]

    @pytest.mark.parametrize("n", [1, 2, 4, 6, 9])
    def test_characteristic_polynomial(self, n):
        """det(xI - M) = 1 + x + ... + x^n."""
        x = sympy.symbols("x")
        charpoly = sympy.Matrix(build_M(n).tolist()).charpoly(x).as_expr()
        assert sympy.expand(charpoly - sum(x**j for j in range(n + 1))) == 0

    @pytest.mark.parametrize("n_pieces", range(3, 21))
    def test_rotates_polygon(self, n_pieces):
        """P @ M is the polygon rotated by 2*pi/N."""
        polygon = regular_polygon(n_pieces)
        zeta = CyclotomicInt.zeta(n_pieces)
        rotated = apply_matrix(polygon, build_M(n_pieces - 1))
        assert rotated == polygon.with_positions(zeta * p for p in polygon.positions)

    @pytest.mark.parametrize("n_pieces", range(3, 21))
    def test_power_sums(self, n_pieces):
        """B_1 = I, B_N = 0, B_(N+1) = I."""
        n = n_pieces - 1
        assert build_B(n, 1) == IntMatrix.identity(n)
        assert build_B(n, n_pieces) == IntMatrix.zeros(n)
        assert build_B(n, n_pieces + 1) == IntMatrix.identity(n)

    @pytest.mark.parametrize("n_pieces", range(3, 21))
    def test_side_to_diagonal(self, n_pieces):
        """P @ B_i scales the polygon by 1 + zeta + ... + zeta^(i-1), so p_1 goes to p_i."""
        polygon = regular_polygon(n_pieces)
        for i in range(1, n_pieces):
            image = apply_matrix(polygon, build_B(n_pieces - 1, i))
            mu = side_multiplier(n_pieces, i)
            assert image.positions[1] == polygon.positions[i]
            assert image == polygon.with_positions(mu * p for p in polygon.positions)

    @pytest.mark.parametrize("n_pieces", [5, 7, 8, 9, 11, 12, 13])
    def test_inverse(self, n_pieces):
        """B_i^-1 = sum of M^(i*j) for j < i', with i * i' = 1 mod N."""
        n = n_pieces - 1
        m = build_M(n)
        for i in range(2, n_pieces - 1):
            if math.gcd(i, n_pieces) != 1:
                continue
            inverse_index = pow(i, -1, n_pieces)
            total = IntMatrix.zeros(n)
            for j in range(inverse_index):
                total = total + m ** (i * j)
            assert build_B(n, i) @ total == IntMatrix.identity(n)
            assert abs(det(build_B(n, i))) == 1

    def test_rejects_non_positive(self):
        """Sizes and indices start at 1."""
        with pytest.raises(InvalidInputError):
            build_M(0)
        with pytest.raises(InvalidInputError):
            build_B(3, 0)


# =============================================================================
# Index selection
# =============================================================================

class TestChooseIndex:
    """Tests for choose_index."""

    @pytest.mark.parametrize(
        "n_pieces, expected",
        [(5, 2), (7, 2), (8, 3), (9, 2), (10, 3), (12, 5), (30, 7)],
    )
    def test_examples(self, n_pieces, expected):
        """Smallest index coprime to N above 1."""
        assert choose_index(n_pieces) == expected

    @pytest.mark.parametrize("n_pieces", [3, 4, 6])
    def test_impossible(self, n_pieces):
        """Triangle, square and hexagon cannot be enlarged."""
        with pytest.raises(ImpossibleError, match=f"regular {n_pieces}-gon can never be enlarged") as info:
            choose_index(n_pieces)
        assert info.value.n_pieces == n_pieces

    def test_too_small(self):
        """Fewer than three vertices is not a polygon."""
        with pytest.raises(InvalidInputError, match="at least 3"):
            choose_index(2)

    def test_polygon_scale(self):
        """sin(2*pi/5) / sin(pi/5) is the golden ratio."""
        assert float(polygon_scale(5, 2, 1)) == pytest.approx(GOLDEN)
        assert float(polygon_scale(5, 2, 15)) == pytest.approx(GOLDEN**15)


# =============================================================================
# Plans
# =============================================================================

class TestPlanEnlargement:
    """Tests for plan_enlargement."""

    def test_pentagon(self):
        """N = 5: i = 2, t = 15, scale phi^15."""
        plan = plan_enlargement(5)
        assert (plan.index, plan.t, plan.rotation_half_steps) == (2, 15, 5)
        assert plan.rotation_steps == Fraction(5, 2)
        assert plan.matrix == build_B(4, 2) ** 15
        assert plan.scale_float == pytest.approx(GOLDEN**15)
        assert plan.scale_log10 == pytest.approx(15 * math.log10(GOLDEN))
        assert plan.word_length == len(plan.jumps)
        assert not plan.jumps.moves_special()

        polygon = regular_polygon(5)
        sim = find_similarity(polygon, apply_sequence(polygon, plan.jumps))
        assert sim.verdict == SIMILAR_LARGER
        assert sim.scale_float == pytest.approx(GOLDEN**15)

    @pytest.mark.parametrize("n_pieces, index, t", [(7, 2, 7), (8, 3, 8)])
    def test_small_polygons(self, n_pieces, index, t):
        """The plan re-simulates to a strictly larger polygon."""
        plan = plan_enlargement(n_pieces)
        assert (plan.index, plan.t) == (index, t)
        assert plan.rotation_half_steps == (t * (index - 1)) % (2 * n_pieces)
        assert plan.rotation_steps == Fraction(plan.rotation_half_steps, 2)
        assert reduce_mod2(plan.matrix) == reduce_mod2(IntMatrix.identity(n_pieces - 1))
        polygon = regular_polygon(n_pieces)
        final = apply_sequence(polygon, plan.jumps)
        assert final == apply_matrix(polygon, plan.matrix)
        assert find_similarity(polygon, final).verdict == SIMILAR_LARGER

    def test_progress_messages(self):
        """Progress is reported through the callback."""
        messages: list[str] = []
        plan_enlargement(5, progress=messages.append)
        assert messages[0] == "N=5: index i=2, parity order t=15"
        assert any("jumps" in m for m in messages)

    def test_to_dict(self):
        """Plans serialize to JSON with the documented keys."""
        data = json.loads(json.dumps(plan_enlargement(5).to_dict()))
        assert set(data) == {
            "N", "i", "t", "matrix", "jumps", "scale_float",
            "scale_log10", "rotation_steps", "rotation_half_steps", "word_length", "verdict",
        }
        assert data["verdict"] == SIMILAR_LARGER
        assert data["rotation_steps"] == 2.5
        assert data["rotation_half_steps"] == 5
        assert len(data["jumps"].split()) == data["word_length"]

    @pytest.mark.parametrize("n_pieces", [3, 4, 6])
    def test_impossible(self, n_pieces):
        """No plan for triangle, square or hexagon."""
        with pytest.raises(ImpossibleError):
            plan_enlargement(n_pieces)

    @pytest.mark.slow
    @pytest.mark.parametrize("n_pieces", range(9, 14))
    def test_larger_polygons(self, n_pieces):
        """Plans for N = 9..13 re-simulate to the claimed scale."""
        plan = plan_enlargement(n_pieces)
        assert plan.verdict == SIMILAR_LARGER
        assert plan.scale_log10 > 0
        assert is_member(plan.matrix)
        polygon = regular_polygon(n_pieces)
        sim = find_similarity(polygon, apply_sequence(polygon, plan.jumps))
        assert sim.verdict == SIMILAR_LARGER
        measured = float(mpmath.log10(sim.scale(dps=40)))
        assert measured == pytest.approx(plan.scale_log10, rel=1e-9)


# =============================================================================
# User-supplied matrices
# =============================================================================

class TestCertificates:
    """Tests for verify_similarity_enlargement and certify_matrix."""

    def test_verify_examples(self, pentagon):
        """Identity and rotation keep the size, B_2^15 enlarges."""
        assert verify_similarity_enlargement(pentagon, IntMatrix.identity(4)) == SIMILAR_NOT_LARGER
        assert verify_similarity_enlargement(pentagon, build_M(4)) == SIMILAR_NOT_LARGER
        assert verify_similarity_enlargement(pentagon, build_B(4, 2) ** 15) == SIMILAR_LARGER

    def test_verify_rejects_bad_determinant(self, pentagon):
        """|det| != 1 is an invalid certificate."""
        doubled = IntMatrix([[2 if r == c else 0 for c in range(4)] for r in range(4)])
        with pytest.raises(InvalidCertificateError, match="determinant 16"):
            verify_similarity_enlargement(pentagon, doubled)

    def test_verify_needs_special_at_origin(self, pentagon):
        """The special piece must sit at the origin."""
        moved = translate(pentagon, CyclotomicInt.from_int(5, 1))
        with pytest.raises(InvalidInputError, match="origin"):
            verify_similarity_enlargement(moved, IntMatrix.identity(4))

    def test_verify_size_mismatch(self, pentagon):
        """The matrix must match the ordinary pieces."""
        with pytest.raises(InvalidInputError, match="ordinary pieces"):
            verify_similarity_enlargement(pentagon, IntMatrix.identity(3))

    def test_certify_side_multiplier(self, pentagon):
        """B_2 fails the parity condition; its parity power decomposes."""
        b = build_B(4, 2)
        assert not is_member(b)
        plan = certify_matrix(pentagon, b)
        assert plan.t == mod2_order(reduce_mod2(b)) == 15
        assert plan.index is None and plan.rotation_steps is None
        assert plan.rotation_half_steps is None
        assert plan.scale_float == pytest.approx(GOLDEN**15)
        assert apply_sequence(pentagon, plan.jumps) == apply_matrix(pentagon, b**15)

    def test_certify_rejects_rotation(self, pentagon):
        """A rotation is not an enlargement."""
        with pytest.raises(VerificationError, match="does not enlarge"):
            certify_matrix(pentagon, build_M(4))

    def test_certify_rejects_bad_determinant(self, unit_square):
        """Determinant checks come first."""
        with pytest.raises(InvalidCertificateError):
            certify_matrix(unit_square, IntMatrix([[1, 0, 0], [0, 3, 0], [0, 0, 1]]))
