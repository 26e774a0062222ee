"""Piece configurations, legal jumps and their matrix picture.

A configuration holds the exact positions of N = n + 1 pieces; piece 0 is the
special piece. Positions are either d-vectors of Fractions (rational backend)
or elements of Z[zeta_N] for planar configurations (cyclotomic backend).

A jump "i/j" moves piece i to 2*pos(j) - pos(i). When piece 0 stays at the
origin, the ordinary positions form a d x n matrix P and a jump of piece i
over piece j is right multiplication by the elementary involution A_ij.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .constants import BACKEND_CYCLOTOMIC, BACKEND_RATIONAL
from .errors import InvalidInputError, VerificationError
from .exact_algebra import CyclotomicInt, IntMatrix

RationalPoint = tuple[Fraction, ...]
Point = Union[RationalPoint, CyclotomicInt]


# =============================================================================
# Backend and configuration
# =============================================================================


@dataclass(frozen=True)
class Backend:
    """Number system of the positions: rational coordinates or Z[zeta_order]."""

    kind: str
    order: int | None = None

    def __post_init__(self) -> None:
        if self.kind == BACKEND_RATIONAL:
            if self.order is not None:
                raise InvalidInputError("rational backend takes no order")
        elif self.kind == BACKEND_CYCLOTOMIC:
            if self.order is None or self.order < 1:
                raise InvalidInputError(f"cyclotomic backend needs a positive order, got {self.order}")
        else:
            raise InvalidInputError(f"unknown backend {self.kind!r}")

    @classmethod
    def rational(cls) -> Backend:
        return cls(BACKEND_RATIONAL)

    @classmethod
    def cyclotomic(cls, order: int) -> Backend:
        return cls(BACKEND_CYCLOTOMIC, order)

    @property
    def is_cyclotomic(self) -> bool:
        return self.kind == BACKEND_CYCLOTOMIC

    def __str__(self) -> str:
        return f"cyclotomic({self.order})" if self.is_cyclotomic else "rational"


@dataclass(frozen=True)
class Configuration:
    """Exact positions of N pieces; index 0 is the special piece.

    Coincident pieces are allowed. Rational coordinates are stored as
    Fractions, so equal configurations compare equal structurally.
    """

    dim: int
    backend: Backend
    positions: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.positions) < 2:
            raise InvalidInputError(f"need at least 2 pieces, got {len(self.positions)}")
        if self.backend.is_cyclotomic:
            if self.dim != 2:
                raise InvalidInputError(f"cyclotomic configurations are planar, got dim={self.dim}")
            for k, p in enumerate(self.positions):
                if not isinstance(p, CyclotomicInt) or p.order != self.backend.order:
                    raise InvalidInputError(
                        f"piece {k}: expected an element of Z[zeta_{self.backend.order}], got {p!r}"
                    )
            object.__setattr__(self, "positions", tuple(self.positions))
        else:
            if self.dim < 1:
                raise InvalidInputError(f"dimension must be positive, got {self.dim}")
            object.__setattr__(
                self, "positions", tuple(_rational_point(p, self.dim, k) for k, p in enumerate(self.positions))
            )

    @property
    def n_pieces(self) -> int:
        """N, the total number of pieces."""
        return len(self.positions)

    @property
    def n(self) -> int:
        """Number of ordinary pieces."""
        return len(self.positions) - 1

    @property
    def special(self) -> Point:
        return self.positions[0]

    def with_positions(self, positions: Iterable[Point]) -> Configuration:
        return Configuration(self.dim, self.backend, tuple(positions))

    def origin(self) -> Point:
        if self.backend.is_cyclotomic:
            return CyclotomicInt.from_int(self.backend.order, 0)
        return tuple(Fraction(0) for _ in range(self.dim))

    def special_at_origin(self) -> bool:
        return self.special == self.origin()


def _rational_point(p: object, dim: int, index: int) -> RationalPoint:
    if isinstance(p, CyclotomicInt) or isinstance(p, (str, bytes)):
        raise InvalidInputError(f"piece {index}: expected {dim} rational coordinates, got {p!r}")
    try:
        coords = tuple(Fraction(x) for x in p)  # type: ignore[union-attr]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"piece {index}: invalid coordinate in {p!r}: {exc}") from exc
    if len(coords) != dim:
        raise InvalidInputError(f"piece {index}: expected {dim} coordinates, got {len(coords)}")
    return coords


def rational_configuration(points: Sequence[Sequence[object]]) -> Configuration:
    """Rational configuration from coordinate lists; dimension taken from the first point."""
    if not points:
        raise InvalidInputError("configuration needs points")
    return Configuration(len(points[0]), Backend.rational(), tuple(tuple(p) for p in points))


# =============================================================================
# Point arithmetic (both backends)
# =============================================================================


def point_add(a: Point, b: Point) -> Point:
    if isinstance(a, CyclotomicInt):
        return a + b
    return tuple(x + y for x, y in zip(a, b))  # type: ignore[arg-type]


def point_sub(a: Point, b: Point) -> Point:
    if isinstance(a, CyclotomicInt):
        return a - b
    return tuple(x - y for x, y in zip(a, b))  # type: ignore[arg-type]


def point_scale(k: int, a: Point) -> Point:
    if isinstance(a, CyclotomicInt):
        return a * k
    return tuple(k * x for x in a)


def reflect(mover: Point, over: Point) -> Point:
    """2*over - mover."""
    if isinstance(mover, CyclotomicInt):
        return CyclotomicInt(mover.order, tuple(2 * o - m for m, o in zip(mover.coeffs, over.coeffs)))
    return tuple(2 * o - m for m, o in zip(mover, over))  # type: ignore[arg-type]


def squared_norm(v: Point) -> Fraction | CyclotomicInt:
    """|v|^2 exactly: a Fraction, or a real element of Z[zeta]."""
    if isinstance(v, CyclotomicInt):
        return v.abs_sq()
    return sum((x * x for x in v), Fraction(0))


def point_to_float(p: Point) -> tuple[float, ...]:
    if isinstance(p, CyclotomicInt):
        return p.embed()
    return tuple(float(x) for x in p)


def translate(c: Configuration, vector: Point) -> Configuration:
    return c.with_positions(point_add(p, vector) for p in c.positions)


def _exact_coordinates(p: Point) -> list[Fraction]:
    if isinstance(p, CyclotomicInt):
        return [Fraction(x) for x in p.coeffs]
    return list(p)


# =============================================================================
# Jumps
# =============================================================================


@dataclass(frozen=True, order=True)
class Jump:
    """Piece `mover` jumps over piece `over`."""

    mover: int
    over: int

    def __post_init__(self) -> None:
        if self.mover < 0 or self.over < 0:
            raise InvalidInputError(f"piece indices must be non-negative: {self.mover}/{self.over}")
        if self.mover == self.over:
            raise InvalidInputError(f"a piece cannot jump over itself: {self.mover}/{self.over}")

    def __str__(self) -> str:
        return f"{self.mover}/{self.over}"

    def check(self, n_pieces: int) -> None:
        if self.mover >= n_pieces or self.over >= n_pieces:
            raise InvalidInputError(f"jump {self} out of range for {n_pieces} pieces")


@lru_cache(maxsize=None)
def _jump(mover: int, over: int) -> Jump:
    return Jump(mover, over)


@dataclass(frozen=True)
class JumpSequence:
    jumps: tuple[Jump, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "jumps", tuple(self.jumps))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> JumpSequence:
        return cls(tuple(_jump(m, o) for m, o in pairs))

    def __iter__(self) -> Iterator[Jump]:
        return iter(self.jumps)

    def __len__(self) -> int:
        return len(self.jumps)

    def __getitem__(self, index: int) -> Jump:
        return self.jumps[index]

    def __add__(self, other: JumpSequence) -> JumpSequence:
        return JumpSequence(self.jumps + other.jumps)

    def __str__(self) -> str:
        return " ".join(str(j) for j in self.jumps)

    def inverse(self) -> JumpSequence:
        """Undoes this sequence: every jump is its own inverse."""
        return JumpSequence(tuple(reversed(self.jumps)))

    def validate(self, n_pieces: int) -> None:
        for jump in self.jumps:
            jump.check(n_pieces)

    def moves_special(self) -> bool:
        return any(j.mover == 0 for j in self.jumps)


# =============================================================================
# Simulation
# =============================================================================


def apply_jump(c: Configuration, j: Jump) -> Configuration:
    j.check(c.n_pieces)
    positions = list(c.positions)
    positions[j.mover] = reflect(positions[j.mover], positions[j.over])
    return c.with_positions(positions)


def apply_sequence(c: Configuration, s: JumpSequence) -> Configuration:
    """Final configuration after every jump of s, computed on plain coordinate lists."""
    s.validate(c.n_pieces)
    coords = [list(p.coeffs) if isinstance(p, CyclotomicInt) else list(p) for p in c.positions]
    for j in s:
        over = coords[j.over]
        coords[j.mover] = [2 * o - m for m, o in zip(coords[j.mover], over)]
    if c.backend.is_cyclotomic:
        return c.with_positions(CyclotomicInt(c.backend.order, tuple(row)) for row in coords)
    return c.with_positions(tuple(row) for row in coords)


def trajectory(c: Configuration, s: JumpSequence) -> list[Configuration]:
    """Every intermediate configuration, start and end included."""
    states = [c]
    for j in s:
        states.append(apply_jump(states[-1], j))
    return states


# =============================================================================
# Matrix picture
# =============================================================================


def elementary_involution(n: int, i: int, j: int) -> IntMatrix:
    """A_ij: ordinary piece i jumps over piece j (j = 0 is the special piece).

    Identity except -1 at (i, i) and, for j != 0, 2 at row j, column i
    (1-based indices as pieces).
    """
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    if not 1 <= i <= n:
        raise InvalidInputError(f"involution index i={i} outside 1..{n}")
    if not 0 <= j <= n or j == i:
        raise InvalidInputError(f"involution index j={j} invalid for i={i}, n={n}")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i - 1] = -1
    if j:
        rows[j - 1][i - 1] = 2
    return IntMatrix(rows)


def apply_involution_columns(work: np.ndarray, mover: int, over: int) -> None:
    """In place: work <- work @ A_{mover, over} on an object array."""
    col = mover - 1
    if over:
        work[:, col] = 2 * work[:, over - 1] - work[:, col]
    else:
        work[:, col] = -work[:, col]


def sequence_to_matrix(s: JumpSequence, n: int) -> IntMatrix:
    """Product of A_{mover, over} in application order.

    For P with the special piece at the origin, apply_sequence(P, s) has
    ordinary positions P @ sequence_to_matrix(s, n).
    """
    s.validate(n + 1)
    if s.moves_special():
        raise InvalidInputError(
            "sequence moves the special piece 0; use normalize_sequence to get an equivalent "
            "sequence that keeps it stationary"
        )
    work = np.array(IntMatrix.identity(n).entries, dtype=object)
    for j in s:
        apply_involution_columns(work, j.mover, j.over)
    return IntMatrix(work)


def apply_matrix(c: Configuration, a: IntMatrix) -> Configuration:
    """Configuration of P @ a, with P the ordinary positions relative to piece 0."""
    if a.n != c.n:
        raise InvalidInputError(f"matrix is {a.n}x{a.n} but configuration has {c.n} ordinary pieces")
    base = c.special
    relative = [point_sub(p, base) for p in c.positions[1:]]
    entries = a.tolist()
    positions: list[Point] = [base]
    for col in range(c.n):
        acc = c.origin()
        for row in range(c.n):
            coeff = entries[row][col]
            if coeff:
                acc = point_add(acc, point_scale(coeff, relative[row]))
        positions.append(point_add(base, acc))
    return c.with_positions(positions)


# =============================================================================
# Translations (special piece allowed to move)
# =============================================================================


def translation_gadget(c: Configuration, a: int) -> JumpSequence:
    """S_a: translates every piece by 2 * (pos(a) - pos(special)).

    First every piece other than a (the special piece first) jumps over a,
    then every ordinary piece, a included, jumps over the special piece.
    That is n + n = 2n jumps.
    """
    if a == 0:
        raise InvalidInputError("translation gadget needs an ordinary piece, got the special piece 0")
    if not 1 <= a <= c.n:
        raise InvalidInputError(f"piece {a} out of range 1..{c.n}")
    first = [Jump(k, a) for k in range(c.n_pieces) if k != a]
    second = [Jump(k, 0) for k in range(1, c.n_pieces)]
    return JumpSequence(tuple(first + second))


def lattice_vector(c: Configuration, w: Sequence[int]) -> Point:
    """2 * P @ w, with P the ordinary positions relative to piece 0."""
    if len(w) != c.n:
        raise InvalidInputError(f"w has length {len(w)}, expected {c.n}")
    acc = c.origin()
    for k, coeff in enumerate(w, start=1):
        if coeff:
            acc = point_add(acc, point_scale(2 * coeff, point_sub(c.positions[k], c.special)))
    return acc


def normalize_sequence(c: Configuration, s: JumpSequence) -> tuple[tuple[int, ...], JumpSequence]:
    """Rewrite s into (w, s') where s' never moves piece 0.

    After each jump of the special piece over a, S_a is inserted; its first
    jump undoes the special jump and the rest stays. Adjacent equal jumps
    cancel. Then apply_sequence(c, s) == translate(apply_sequence(c, s'),
    lattice_vector(c, w)).
    """
    s.validate(c.n_pieces)
    coefs = [[0] * c.n] + [[1 if k == piece else 0 for k in range(1, c.n_pieces)] for piece in range(1, c.n_pieces)]
    for j in s:
        coefs[j.mover] = [2 * o - m for m, o in zip(coefs[j.mover], coefs[j.over])]
    if any(x % 2 for x in coefs[0]):
        raise VerificationError(f"special piece left the doubled lattice: {coefs[0]}")
    w = tuple(x // 2 for x in coefs[0])

    stack: list[Jump] = []

    def push(jump: Jump) -> None:
        if stack and stack[-1] == jump:
            stack.pop()
        else:
            stack.append(jump)

    for j in s:
        if j.mover == 0:
            for inserted in translation_gadget(c, j.over).jumps[1:]:
                push(inserted)
        else:
            push(j)
    return w, JumpSequence(tuple(stack))


def special_piece_lattice_check(c0: Configuration, c1: Configuration) -> bool:
    """True iff the special piece of c1 sits in 2L, L = {P w : w integer}.

    P holds the ordinary positions of c0 relative to its special piece.
    Cyclotomic positions are compared through their coefficient vectors,
    which is exact because Q(zeta) embeds injectively into the plane.
    """
    if c0.backend != c1.backend or c0.dim != c1.dim:
        raise InvalidInputError(f"incompatible configurations: {c0.backend} vs {c1.backend}")
    base = c0.special
    columns = [_exact_coordinates(point_sub(p, base)) for p in c0.positions[1:]]
    target = _exact_coordinates(point_sub(c1.special, base))
    return in_doubled_lattice(columns, target)


def in_doubled_lattice(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    if not any(target):
        return True
    denom = math.lcm(*(x.denominator for col in columns for x in col), *(x.denominator for x in target))
    rows = len(target)
    lattice = Matrix(rows, len(columns), lambda r, k: int(2 * columns[k][r] * denom))
    if lattice.is_zero_matrix:
        return False
    rhs = Matrix(rows, 1, lambda r, _: int(target[r] * denom))
    basis = hermite_normal_form(lattice)
    try:
        solution, params = basis.gauss_jordan_solve(rhs)
    except ValueError:
        return False
    if params.shape[0]:
        raise VerificationError("Hermite basis is not of full column rank")
    return all(x.is_integer for x in solution)


# =============================================================================
# Standard configurations
# =============================================================================


def root_of_unity(order: int, n: int) -> CyclotomicInt:
    """A primitive n-th root of unity in Z[zeta_order].

    The roots of unity in Z[zeta_m] are +-zeta_m^k, so n must divide m, or 2m
    when m is odd; then zeta_2m = -zeta_m^((m + 1) / 2).

    Raises:
        InvalidInputError: the ring has no primitive n-th root of unity.
    """
    if order < 1 or n < 1:
        raise InvalidInputError(f"orders must be positive, got {order} and {n}")
    if order % n == 0:
        return CyclotomicInt.zeta(order, order // n)
    if order % 2 and (2 * order) % n == 0:
        zeta_double = -CyclotomicInt.zeta(order, (order + 1) // 2)
        return zeta_double ** ((2 * order) // n)
    raise InvalidInputError(f"Z[zeta_{order}] has no primitive {n}-th root of unity")


def regular_polygon(n_pieces: int, order: int | None = None) -> Configuration:
    """Vertices p_k = zeta^k - 1 of a regular N-gon; piece 0 at the origin.

    With `order` the vertices live in Z[zeta_order] and zeta is replaced by a
    primitive N-th root of unity of that ring (see root_of_unity).
    """
    if n_pieces < 2:
        raise InvalidInputError(f"polygon needs at least 2 vertices, got {n_pieces}")
    order = n_pieces if order is None else order
    root = root_of_unity(order, n_pieces)
    positions = [root**k - 1 for k in range(n_pieces)]
    return Configuration(2, Backend.cyclotomic(order), tuple(positions))


def regular_polygon_with_center(n_pieces: int) -> Configuration:
    """Regular N-gon plus a further piece N at its center (-1)."""
    polygon = regular_polygon(n_pieces)
    center = CyclotomicInt.from_int(n_pieces, -1)
    return polygon.with_positions(polygon.positions + (center,))


def unit_square() -> Configuration:
    return rational_configuration([(0, 0), (1, 0), (1, 1), (0, 1)])


def unit_triangle() -> Configuration:
    """Right triangle (0,0), (1,0), (0,1)."""
    return rational_configuration([(0, 0), (1, 0), (0, 1)])
