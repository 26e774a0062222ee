"""Exact similarity tests between configurations.

Two point sets are similar iff some bijection scales every pairwise
distance by the same factor. Squared distances are exact (Fractions, or
real elements of Z[zeta]), so the test cross-multiplies instead of dividing:

    |q_s(k) - q_s(l)|^2 * |p_a - p_b|^2 == |q_s(a) - q_s(b)|^2 * |p_k - p_l|^2

Pieces are distinguishable, but the tests accept any relabeling: they
compare the point sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .configuration import Configuration, point_sub, regular_polygon, squared_norm, unit_square
from .constants import NOT_SIMILAR, SIMILAR_LARGER, SIMILAR_NOT_LARGER
from .errors import InvalidInputError
from .exact_algebra import CyclotomicInt, cyc_div, cyc_sign, cyc_to_mpc

Scalar = Fraction | CyclotomicInt


@dataclass(frozen=True)
class Similarity:
    """dst positions[mapping[k]] is the image of src piece k.

    scale_num / scale_den is the exact squared scale factor: the dst and
    src squared distances of one reference pair.
    """

    mapping: tuple[int, ...]
    scale_num: Scalar
    scale_den: Scalar
    comparison: int  # sign of (scale - 1)

    def scale(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return mpmath.sqrt(_to_mpf(self.scale_num) / _to_mpf(self.scale_den))

    @property
    def scale_float(self) -> float:
        return float(self.scale())

    @property
    def verdict(self) -> str:
        return SIMILAR_LARGER if self.comparison > 0 else SIMILAR_NOT_LARGER


def _to_mpf(x: Scalar) -> mpmath.mpf:
    if isinstance(x, CyclotomicInt):
        return cyc_to_mpc(x, mpmath.mp.dps).real
    return mpmath.mpf(x.numerator) / x.denominator


def _sign(x: Scalar) -> int:
    if isinstance(x, CyclotomicInt):
        return cyc_sign(x)
    return (x > 0) - (x < 0)


def _is_zero(x: Scalar) -> bool:
    return x.is_zero() if isinstance(x, CyclotomicInt) else x == 0


def _distance_table(c: Configuration) -> list[list[Scalar]]:
    pts = c.positions
    return [[squared_norm(point_sub(p, q)) for q in pts] for p in pts]


def find_similarity(src: Configuration, dst: Configuration) -> Similarity | None:
    """Some similarity taking the point set of src onto that of dst, or None.

    Degenerate sources (all pieces on one point) are similar only to
    degenerate targets, with scale 1.
    """
    if src.backend != dst.backend or src.dim != dst.dim:
        raise InvalidInputError(f"cannot compare {src.backend} with {dst.backend} configurations")
    if src.n_pieces != dst.n_pieces:
        return None
    size = src.n_pieces
    ds = _distance_table(src)
    dd = _distance_table(dst)

    ref = next(((a, b) for a in range(size) for b in range(a + 1, size) if not _is_zero(ds[a][b])), None)
    if ref is None:
        if all(_is_zero(dd[0][k]) for k in range(size)):
            one = ds[0][0] + 1
            return Similarity(tuple(range(size)), one, one, 0)
        return None
    a, b = ref

    for ia in range(size):
        for ib in range(size):
            if ia == ib or _is_zero(dd[ia][ib]):
                continue
            num, den = dd[ia][ib], ds[a][b]
            mapping = _extend(ds, dd, num, den, {a: ia, b: ib})
            if mapping is not None:
                return Similarity(tuple(mapping), num, den, _sign(num - den))
    return None


def _extend(
    ds: Sequence[Sequence[Scalar]],
    dd: Sequence[Sequence[Scalar]],
    num: Scalar,
    den: Scalar,
    fixed: dict[int, int],
) -> list[int] | None:
    size = len(ds)
    order = list(fixed) + [k for k in range(size) if k not in fixed]
    assign: dict[int, int] = {}
    used: set[int] = set()

    def fits(k: int, target: int) -> bool:
        return all(dd[target][assign[l]] * den == num * ds[k][l] for l in assign)

    def search(pos: int) -> bool:
        if pos == size:
            return True
        k = order[pos]
        candidates = [fixed[k]] if k in fixed else range(size)
        for target in candidates:
            if target in used or not fits(k, target):
                continue
            assign[k] = target
            used.add(target)
            if search(pos + 1):
                return True
            del assign[k]
            used.discard(target)
        return False

    if not search(0):
        return None
    return [assign[k] for k in range(size)]


def classify(src: Configuration, dst: Configuration) -> str:
    """similar_larger, similar_not_larger or not_similar."""
    sim = find_similarity(src, dst)
    return NOT_SIMILAR if sim is None else sim.verdict


def is_regular_polygon(c: Configuration) -> bool:
    """True iff the planar point set is the vertex set of a regular N-gon."""
    if c.dim != 2 or c.n_pieces < 3:
        return False
    if c.backend.is_cyclotomic:
        try:
            reference = regular_polygon(c.n_pieces, order=c.backend.order)
        except InvalidInputError:
            return False
    elif c.n_pieces == 4:
        # the square is the only regular polygon with rational vertices
        reference = unit_square()
    else:
        return False
    return find_similarity(reference, c) is not None


def complex_multiplier(src: Configuration, dst: Configuration, mapping: Sequence[int]) -> CyclotomicInt | None:
    """mu with dst[mapping[k]] - dst[mapping[0]] == mu * (src[k] - src[0]) for all k.

    Only for the cyclotomic backend; None when no such mu exists in Z[zeta]
    (orientation-reversing maps, or a non-integral multiplier).
    """
    if not src.backend.is_cyclotomic:
        raise InvalidInputError("complex multipliers need the cyclotomic backend")
    base_src = src.positions[0]
    base_dst = dst.positions[mapping[0]]
    ref = next((k for k in range(1, src.n_pieces) if not point_sub(src.positions[k], base_src).is_zero()), None)
    if ref is None:
        return None
    try:
        mu = cyc_div(
            point_sub(dst.positions[mapping[ref]], base_dst),
            point_sub(src.positions[ref], base_src),
        )
    except InvalidInputError:
        return None
    for k in range(src.n_pieces):
        lhs = point_sub(dst.positions[mapping[k]], base_dst)
        if lhs != mu * point_sub(src.positions[k], base_src):
            return None
    return mu
