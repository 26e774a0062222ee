"""Membership test and decomposition into elementary involutions.

A square integer matrix is a product of elementary involutions A_ij iff
|det| = 1 and it is congruent to the identity mod 2. decompose() turns such
a matrix into the identity with admissible operations and reads the
inverse word back as a jump sequence:

- NegateColumn(i)           -> A_i0
- AddTwice(i, j, sign=-1)   -> A_ij A_i0   (column i -= 2 * column j)
- AddTwice(i, j, sign=+1)   -> A_i0 A_ij   (column i += 2 * column j)

The same matrices multiplied from the left act as row operations, which is
how the last column of each block is cleared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .configuration import Jump, JumpSequence, sequence_to_matrix
from .constants import DECOMPOSE_CHECK_LIMIT, TRANSVECTION_LITERAL_LIMIT
from .errors import MembershipError, VerificationError
from .exact_algebra import IntMatrix, Mod2Matrix, det, reduce_mod2, unimodular_lift

COLUMN = "column"
ROW = "row"
NEGATE = "negate"
ADD_TWICE = "add_twice"


def transvection_word(n: int, target: int, source: int, k: int) -> list[tuple[int, int]]:
    """Involution word for I + 2k * E[source, target] (1-based indices).

    As a right factor this adds 2k times column `source` to column `target`.
    Small |k| (or n < 3) gives the literal word of length 2|k|; otherwise
    the commutator identity

        T(t<-s, xy) = T(l<-s, y) T(t<-l, x) T(l<-s, -y) T(t<-l, -x)

    with a third index l splits 2k into 4ab + 2r, a and b near sqrt(|k|/2).
    """
    if k == 0:
        return []
    m = abs(k)
    sgn = 1 if k > 0 else -1
    if m <= TRANSVECTION_LITERAL_LIMIT or n < 3:
        step = [(target, 0), (target, source)] if sgn > 0 else [(target, source), (target, 0)]
        return step * m
    third = next(x for x in range(1, n + 1) if x not in (target, source))
    a = math.isqrt(m // 2)
    b = m // (2 * a)
    r = m - 2 * a * b
    return (
        transvection_word(n, third, source, sgn * b)
        + transvection_word(n, target, third, a)
        + transvection_word(n, third, source, -sgn * b)
        + transvection_word(n, target, third, -a)
        + transvection_word(n, target, source, sgn * r)
    )


@dataclass(frozen=True)
class AdmissibleOp:
    """One admissible operation, 1-based indices.

    side=column: NEGATE negates column i; ADD_TWICE adds sign*2*count times
    column j to column i. side=row: the same with rows (row i changes).
    """

    kind: str
    i: int
    j: int = 0
    sign: int = 1
    count: int = 1
    side: str = COLUMN

    @classmethod
    def negate(cls, i: int, side: str = COLUMN) -> AdmissibleOp:
        return cls(NEGATE, i, side=side)

    @classmethod
    def add_twice(cls, i: int, j: int, sign: int, count: int = 1, side: str = COLUMN) -> AdmissibleOp:
        return cls(ADD_TWICE, i, j, sign, count, side)

    def word(self, n: int) -> list[tuple[int, int]]:
        """Involutions (mover, over) whose ordered product is this op's matrix."""
        if self.kind == NEGATE:
            return [(self.i, 0)]
        k = self.sign * self.count
        if self.side == COLUMN:
            return transvection_word(n, self.i, self.j, k)
        return transvection_word(n, self.j, self.i, k)

    def apply(self, work: np.ndarray) -> None:
        """In place on an object array: right factor for columns, left for rows."""
        i, j = self.i - 1, self.j - 1
        if self.side == COLUMN:
            if self.kind == NEGATE:
                work[:, i] = -work[:, i]
            else:
                work[:, i] = work[:, i] + 2 * self.sign * self.count * work[:, j]
        else:
            if self.kind == NEGATE:
                work[i, :] = -work[i, :]
            else:
                work[i, :] = work[i, :] + 2 * self.sign * self.count * work[j, :]


def is_member(a: IntMatrix) -> bool:
    """|det a| = 1 and a = I mod 2."""
    return reduce_mod2(a) == Mod2Matrix.identity(a.n) and abs(det(a)) == 1


def decompose(a: IntMatrix) -> JumpSequence:
    """Jumps whose involutions multiply, in order, to exactly a.

    Words up to DECOMPOSE_CHECK_LIMIT jumps are multiplied back and compared
    with a before they are returned.

    Raises:
        MembershipError: a is not generated by elementary involutions.
        VerificationError: the reduction or the check fails.
    """
    if not is_member(a):
        raise MembershipError(
            f"matrix is not a product of elementary involutions "
            f"(det={det(a)}, parity ok={reduce_mod2(a) == Mod2Matrix.identity(a.n)})"
        )
    n = a.n
    work = np.array(a.entries, dtype=object)
    left_ops: list[AdmissibleOp] = []
    right_ops: list[AdmissibleOp] = []

    # Rows and columns below/right of r are already e_k; column ops on row r
    # leave them alone and row r = e_r clears column r without growth.
    for r in range(n - 1, -1, -1):
        _reduce_row(work, r, right_ops)
        if work[r, r] == -1:
            _record(work, AdmissibleOp.negate(r + 1), right_ops)
        if r:
            _clear_with_pivot(work, r, left_ops)

    if not (work == np.array(IntMatrix.identity(n).entries, dtype=object)).all():
        raise VerificationError("reduction did not reach the identity")

    # work = L_p..L_1 @ a @ R_1..R_q = I, hence a = L_1^-1..L_p^-1 @ (R_1..R_q)^-1
    word: list[tuple[int, int]] = []
    for op in left_ops:
        word.extend(reversed(op.word(n)))
    right_word = [pair for op in right_ops for pair in op.word(n)]
    word.extend(reversed(right_word))
    jumps = JumpSequence.from_pairs(word)

    if len(jumps) <= DECOMPOSE_CHECK_LIMIT and sequence_to_matrix(jumps, n) != a:
        raise VerificationError(f"{len(jumps)}-jump word does not multiply back to the matrix")
    return jumps


def decompose_power(a: IntMatrix, t: int) -> JumpSequence:
    """Jumps for a**t without expanding the power.

    a must be unimodular with (a mod 2)**t = I. With C_k a small unimodular
    lift of (a mod 2)**k (C_0 = C_t = I), a**t is the product of the factors
    F_k = C_(k-1) @ a @ C_k^-1, k = 1..t. Every F_k is congruent to I mod 2
    and has small entries, so the word grows linearly in t.

    Raises:
        MembershipError: |det a| != 1 or (a mod 2)**t != I.
    """
    if t < 1:
        raise MembershipError(f"power must be positive, got {t}")
    if abs(det(a)) != 1:
        raise MembershipError(f"matrix has determinant {det(a)}, expected +-1")
    a2 = reduce_mod2(a)
    power = Mod2Matrix.identity(a.n)
    for _ in range(t):
        power = power @ a2
    if power != Mod2Matrix.identity(a.n):
        raise MembershipError(f"(A mod 2)^{t} is not the identity")

    jumps: list[Jump] = []
    previous = IntMatrix.identity(a.n)
    power = Mod2Matrix.identity(a.n)
    for _ in range(t):
        power = power @ a2
        lift, lift_inverse = unimodular_lift(power)
        jumps.extend(decompose(previous @ a @ lift_inverse))
        previous = lift
    return JumpSequence(tuple(jumps))


def _record(work: np.ndarray, op: AdmissibleOp, ops: list[AdmissibleOp]) -> None:
    op.apply(work)
    ops.append(op)


def _row_head(work: np.ndarray, r: int) -> list[int]:
    """Row r up to and including the diagonal."""
    return [work[r, c] for c in range(r + 1)]


def _reduce_row(work: np.ndarray, r: int, ops: list[AdmissibleOp]) -> None:
    """Euclid-style column reduction of row r down to +-e_r.

    Largest |x| is reduced by the smallest nonzero |x| (ties: lowest index),
    in one batch of floor(|big| / (2|small|)) AddTwice steps, at least one.
    """
    metric = sum(abs(x) for x in _row_head(work, r))
    while True:
        line = _row_head(work, r)
        nonzero = [k for k, x in enumerate(line) if x]
        if not nonzero:
            raise VerificationError(f"row {r} vanished during reduction")
        big = max(nonzero, key=lambda k: (abs(line[k]), -k))
        small = min(nonzero, key=lambda k: (abs(line[k]), k))
        if abs(line[big]) == abs(line[small]):
            break
        xb, xs = line[big], line[small]
        count = max(1, abs(xb) // (2 * abs(xs)))
        sign = -1 if (xb > 0) == (xs > 0) else 1
        _record(work, AdmissibleOp.add_twice(big + 1, small + 1, sign, count), ops)
        new_metric = sum(abs(x) for x in _row_head(work, r))
        if new_metric >= metric:
            raise VerificationError(f"reduction of row {r} stalled at {new_metric}")
        metric = new_metric

    line = _row_head(work, r)
    if any(x for k, x in enumerate(line) if k != r) or abs(line[r]) != 1:
        raise VerificationError(f"row {r} reduced to {line}, expected +-e_{r}")


def _clear_with_pivot(work: np.ndarray, r: int, ops: list[AdmissibleOp]) -> None:
    """Zero column r above the unit pivot using row r = e_r."""
    for k in range(r):
        x = work[k, r]
        if x:
            if x % 2:
                raise VerificationError(f"odd entry {x} above the diagonal at ({k}, {r})")
            sign = -1 if x > 0 else 1
            _record(work, AdmissibleOp.add_twice(k + 1, r + 1, sign, abs(x) // 2, ROW), ops)
