"""Enlargement planner for regular polygons.

For the regular N-gon with p_k = zeta^k - 1 the rotation by 2*pi/N is the
integer matrix M (PM = SP). B_i = I + M + ... + M^(i-1) takes the side p_1
to the diagonal p_i, is unimodular for gcd(i, N) = 1, and some power B_i^t
is congruent to I mod 2. That power is a product of elementary involutions;
the decomposer turns it into jumps one small factor at a time, and the
jumps scale the polygon by
(sin(i*pi/N) / sin(pi/N))^t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import mpmath

from .configuration import Configuration, JumpSequence, apply_matrix, apply_sequence, regular_polygon
from .constants import IMPOSSIBLE_POLYGONS, SIMILAR_LARGER
from .decomposer import decompose_power
from .errors import ImpossibleError, InvalidCertificateError, InvalidInputError, VerificationError
from .exact_algebra import CyclotomicInt, IntMatrix, cyc_sign, det, mod2_order, reduce_mod2
from .similarity import Similarity, classify, find_similarity

Progress = Callable[[str], None]

# float() of anything above this overflows or loses meaning in JSON
_FLOAT_LIMIT = mpmath.mpf("1e300")


def _silent(_: str) -> None:
    pass


# =============================================================================
# Rotation matrix and power sums
# =============================================================================


def build_M(n: int) -> IntMatrix:
    """First row all -1, ones on the subdiagonal."""
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    rows = [[0] * n for _ in range(n)]
    rows[0] = [-1] * n
    for r in range(1, n):
        rows[r][r - 1] = 1
    return IntMatrix(rows)


def build_B(n: int, k: int) -> IntMatrix:
    """B_k = sum of M^j for j < k, via B_k = I + M @ B_(k-1)."""
    if k < 1:
        raise InvalidInputError(f"k must be positive, got {k}")
    m = build_M(n)
    identity = IntMatrix.identity(n)
    b = identity
    for _ in range(k - 1):
        b = identity + m @ b
    return b


def choose_index(n_pieces: int) -> int:
    """Smallest i with 1 < i < N - 1 and gcd(i, N) = 1.

    Raises:
        ImpossibleError: N is 3, 4 or 6.
        InvalidInputError: N < 3.
    """
    if n_pieces < 3:
        raise InvalidInputError(f"a polygon needs at least 3 vertices, got N={n_pieces}")
    if n_pieces in IMPOSSIBLE_POLYGONS:
        raise ImpossibleError(n_pieces, IMPOSSIBLE_POLYGONS[n_pieces])
    for i in range(2, n_pieces - 1):
        if math.gcd(i, n_pieces) == 1:
            return i
    raise ImpossibleError(n_pieces, "no index coprime to N between 1 and N - 1")


def side_multiplier(n_pieces: int, i: int) -> CyclotomicInt:
    """1 + zeta + ... + zeta^(i-1): the complex factor of B_i on the polygon."""
    total = CyclotomicInt.from_int(n_pieces, 0)
    for j in range(i):
        total = total + CyclotomicInt.zeta(n_pieces, j)
    return total


def polygon_scale(n_pieces: int, i: int, t: int, dps: int = 30) -> mpmath.mpf:
    """(sin(i*pi/N) / sin(pi/N))^t."""
    with mpmath.workdps(dps):
        ratio = mpmath.sinpi(mpmath.mpf(i) / n_pieces) / mpmath.sinpi(mpmath.mpf(1) / n_pieces)
        return ratio**t


def _scale_to_json(value: mpmath.mpf) -> float | str:
    if value < _FLOAT_LIMIT:
        return float(value)
    return mpmath.nstr(value, 15)


def _steps_to_json(value: Fraction | None) -> int | float | None:
    if value is None:
        return None
    return int(value) if value.denominator == 1 else float(value)


# =============================================================================
# Plans
# =============================================================================


@dataclass(frozen=True)
class EnlargementPlan:
    """A verified jump sequence that enlarges a configuration.

    For polygon plans `index` and `rotation_half_steps` are set: the image is
    rotated by rotation_half_steps * pi/N, that is t * (i - 1) mod 2N.
    Plans from certify_matrix carry the exact similarity instead.
    """

    n_pieces: int
    index: int | None
    t: int
    matrix: IntMatrix
    jumps: JumpSequence
    rotation_half_steps: int | None
    verdict: str = SIMILAR_LARGER
    similarity: Similarity | None = None

    def scale(self, dps: int = 30) -> mpmath.mpf:
        if self.index is not None:
            return polygon_scale(self.n_pieces, self.index, self.t, dps)
        if self.similarity is None:
            raise VerificationError("plan carries no scale")
        return self.similarity.scale(dps)

    @property
    def scale_float(self) -> float | str:
        return _scale_to_json(self.scale())

    @property
    def scale_log10(self) -> float:
        with mpmath.workdps(30):
            return float(mpmath.log10(self.scale()))

    @property
    def rotation_steps(self) -> Fraction | None:
        """Rotation in multiples of 2*pi/N; a half-integer for odd half steps."""
        if self.rotation_half_steps is None:
            return None
        return Fraction(self.rotation_half_steps, 2)

    @property
    def word_length(self) -> int:
        return len(self.jumps)

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.n_pieces,
            "i": self.index,
            "t": self.t,
            "matrix": self.matrix.tolist(),
            "jumps": str(self.jumps),
            "scale_float": self.scale_float,
            "scale_log10": self.scale_log10,
            "rotation_steps": _steps_to_json(self.rotation_steps),
            "rotation_half_steps": self.rotation_half_steps,
            "word_length": self.word_length,
            "verdict": self.verdict,
        }


def plan_enlargement(n_pieces: int, progress: Progress = _silent) -> EnlargementPlan:
    """Jump sequence taking the regular N-gon onto a strictly larger one.

    The sequence is re-simulated in Z[zeta_N] before the plan is returned.

    Raises:
        ImpossibleError: N is 3, 4 or 6.
        VerificationError: any internal check fails.
    """
    i = choose_index(n_pieces)
    n = n_pieces - 1
    b = build_B(n, i)
    d = det(b)
    if abs(d) != 1:
        raise VerificationError(f"B_{i} for N={n_pieces} has determinant {d}")
    t = mod2_order(reduce_mod2(b))
    progress(f"N={n_pieces}: index i={i}, parity order t={t}")

    a = b**t
    progress(f"B_{i}^{t} has entries up to {a.max_abs_entry()}; decomposing {t} small factors")
    jumps = decompose_power(b, t)
    progress(f"decomposed into {len(jumps)} jumps")

    start = regular_polygon(n_pieces)
    final = apply_sequence(start, jumps)
    mu = side_multiplier(n_pieces, i) ** t
    expected = start.with_positions(mu * p for p in start.positions)
    if final != expected:
        raise VerificationError(f"re-simulated N={n_pieces} plan does not reach mu * polygon")
    if cyc_sign(mu.abs_sq() - 1) <= 0:
        raise VerificationError(f"multiplier for N={n_pieces} does not enlarge")
    progress("re-simulation matches the scaled polygon exactly")

    return EnlargementPlan(
        n_pieces=n_pieces,
        index=i,
        t=t,
        matrix=a,
        jumps=jumps,
        rotation_half_steps=(t * (i - 1)) % (2 * n_pieces),
    )


# =============================================================================
# User-supplied matrices
# =============================================================================


def _check_certificate(p: Configuration, a: IntMatrix) -> None:
    if a.n != p.n:
        raise InvalidInputError(f"matrix is {a.n}x{a.n} but configuration has {p.n} ordinary pieces")
    d = det(a)
    if abs(d) != 1:
        raise InvalidCertificateError(f"certificate matrix has determinant {d}, expected +-1")


def verify_similarity_enlargement(p: Configuration, a: IntMatrix) -> str:
    """Classify the configuration P @ A against P.

    Raises:
        InvalidInputError: the special piece of P is not at the origin, or sizes differ.
        InvalidCertificateError: |det A| != 1.
    """
    if not p.special_at_origin():
        raise InvalidInputError("the special piece must sit at the origin")
    _check_certificate(p, a)
    return classify(p, apply_matrix(p, a))


def certify_matrix(p: Configuration, a: IntMatrix, progress: Progress = _silent) -> EnlargementPlan:
    """Turn a unimodular enlarging certificate A into jumps.

    A^t with t the parity order of A satisfies the parity condition and still
    enlarges, so it decomposes into a verified jump sequence.

    Raises:
        InvalidCertificateError: |det A| != 1.
        VerificationError: A does not enlarge P, or the jumps miss P @ A^t.
    """
    _check_certificate(p, a)
    t = mod2_order(reduce_mod2(a))
    at = a**t
    progress(f"parity order t={t}, entries up to {at.max_abs_entry()}")
    target = apply_matrix(p, at)
    sim = find_similarity(p, target)
    if sim is None or sim.verdict != SIMILAR_LARGER:
        raise VerificationError(f"certificate does not enlarge: {classify(p, target)}")
    jumps = decompose_power(a, t)
    progress(f"decomposed into {len(jumps)} jumps")
    if apply_sequence(p, jumps) != target:
        raise VerificationError("jumps do not reproduce P @ A^t")
    return EnlargementPlan(
        n_pieces=p.n_pieces,
        index=None,
        t=t,
        matrix=at,
        jumps=jumps,
        rotation_half_steps=None,
        similarity=sim,
    )
