"""Exact algebra used by every other module.

- IntMatrix: square matrix of unbounded Python integers (numpy object dtype)
- Mod2Matrix: square matrix over GF(2) (numpy bool dtype)
- CyclotomicInt: element of Z[zeta_N], stored as its coefficient vector
  reduced modulo the N-th cyclotomic polynomial

All three are immutable values. Polynomial coefficient vectors are in
ascending order: [c0, c1, c2] means c0 + c1*x + c2*x^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .errors import InvalidInputError, SingularMatrixError, VerificationError


# =============================================================================
# Integer matrices
# =============================================================================


class IntMatrix:
    """Square matrix of arbitrary-precision integers."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Sequence[Sequence[int]] | np.ndarray) -> None:
        rows = np.asarray(entries, dtype=object).tolist()
        if not rows or not isinstance(rows[0], list):
            raise InvalidInputError("IntMatrix needs a non-empty list of rows")
        n = len(rows)
        if any(not isinstance(row, list) or len(row) != n for row in rows):
            raise InvalidInputError(f"IntMatrix must be square, got {n} rows of unequal length")
        try:
            data = [[_as_int(x) for x in row] for row in rows]
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"IntMatrix entries must be integers: {exc}") from exc
        arr = np.empty((n, n), dtype=object)
        arr[:, :] = data
        arr.setflags(write=False)
        self._entries = arr

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        if n < 1:
            raise InvalidInputError(f"matrix size must be positive, got {n}")
        return cls([[1 if r == c else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def zeros(cls, n: int) -> IntMatrix:
        if n < 1:
            raise InvalidInputError(f"matrix size must be positive, got {n}")
        return cls([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only object array; copy before mutating."""
        return self._entries

    def tolist(self) -> list[list[int]]:
        return self._entries.tolist()

    def __getitem__(self, index: tuple[int, int]) -> int:
        return self._entries[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.n == other.n and self.tolist() == other.tolist()

    def __hash__(self) -> int:
        return hash(tuple(map(tuple, self.tolist())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        _check_same_size(self, other)
        return IntMatrix(self._entries + other._entries)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        _check_same_size(self, other)
        return IntMatrix(self._entries - other._entries)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(-self._entries)

    def __pow__(self, exponent: int) -> IntMatrix:
        return matrix_power(self, exponent)

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.n)

    def max_abs_entry(self) -> int:
        return max(abs(x) for row in self.tolist() for x in row)


def _as_int(value: object) -> int:
    if isinstance(value, bool):
        raise TypeError(f"boolean {value!r} is not an integer entry")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise TypeError(f"{value!r} is not an integer")


def _check_same_size(a: IntMatrix, b: IntMatrix) -> None:
    if a.n != b.n:
        raise InvalidInputError(f"dimension mismatch: {a.n}x{a.n} vs {b.n}x{b.n}")


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Every division in the elimination is exact, so all intermediates stay
    integers and their size grows polynomially.
    """
    a = np.array(m.entries, dtype=object)
    n = m.n
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nonzero = [r for r in range(k + 1, n) if a[r, k] != 0]
            if not nonzero:
                return 0
            a[[k, nonzero[0]]] = a[[nonzero[0], k]]
            sign = -sign
        a[k + 1 :, k + 1 :] = (
            a[k + 1 :, k + 1 :] * a[k, k] - np.outer(a[k + 1 :, k], a[k, k + 1 :])
        ) // prev
        prev = a[k, k]
    return int(sign * a[n - 1, n - 1])


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    _check_same_size(a, b)
    return IntMatrix(a.entries @ b.entries)


def matrix_power(m: IntMatrix, exponent: int) -> IntMatrix:
    """m**exponent by repeated squaring; exponent must be >= 0."""
    if exponent < 0:
        raise InvalidInputError(f"negative matrix exponent {exponent}")
    result = IntMatrix.identity(m.n)
    base = m
    while exponent:
        if exponent & 1:
            result = result @ base
        exponent >>= 1
        if exponent:
            base = base @ base
    return result


# =============================================================================
# Matrices over GF(2)
# =============================================================================


class Mod2Matrix:
    """Square matrix over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Sequence[Sequence[int]] | np.ndarray) -> None:
        arr = np.array(bits, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidInputError(f"Mod2Matrix must be square and non-empty, got shape {arr.shape}")
        if any(x not in (0, 1) for x in arr.ravel()):
            raise InvalidInputError("Mod2Matrix entries must be 0 or 1")
        out = arr.astype(bool)
        out.setflags(write=False)
        self._bits = out

    @classmethod
    def identity(cls, n: int) -> Mod2Matrix:
        return cls(np.eye(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return self._bits.shape[0]

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def tolist(self) -> list[list[int]]:
        return self._bits.astype(np.int64).tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mod2Matrix):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.n, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"Mod2Matrix({self.tolist()!r})"

    def __matmul__(self, other: Mod2Matrix) -> Mod2Matrix:
        if self.n != other.n:
            raise InvalidInputError(f"dimension mismatch: {self.n} vs {other.n}")
        product = self._bits.astype(np.int64) @ other._bits.astype(np.int64)
        return Mod2Matrix(product % 2)

    def rank(self) -> int:
        """Rank over GF(2) by Gaussian elimination."""
        work = self._bits.copy()
        rank = 0
        for col in range(self.n):
            pivots = np.nonzero(work[rank:, col])[0]
            if pivots.size == 0:
                continue
            pivot = rank + int(pivots[0])
            if pivot != rank:
                work[[rank, pivot]] = work[[pivot, rank]]
            for row in range(self.n):
                if row != rank and work[row, col]:
                    work[row] ^= work[rank]
            rank += 1
            if rank == self.n:
                break
        return rank

    def is_invertible(self) -> bool:
        return self.rank() == self.n


def reduce_mod2(m: IntMatrix) -> Mod2Matrix:
    return Mod2Matrix(m.entries % 2)


def mod2_order(m: Mod2Matrix) -> int:
    """Smallest t >= 1 with m**t == I over GF(2).

    Raises:
        SingularMatrixError: m is not invertible over GF(2).
        VerificationError: no order found within 2**n - 1 steps, the largest
            element order in GL(n, 2).
    """
    if not m.is_invertible():
        raise SingularMatrixError(f"{m.n}x{m.n} matrix is singular mod 2 and has no order")
    identity = Mod2Matrix.identity(m.n)
    power = m
    limit = 2**m.n - 1
    for t in range(1, limit + 1):
        if power == identity:
            return t
        power = power @ m
    raise VerificationError(f"mod-2 order of {m.n}x{m.n} matrix exceeds {limit}")


def _unit_lower_inverse(lower: IntMatrix) -> IntMatrix:
    n = lower.n
    inverse = [[0] * n for _ in range(n)]
    for c in range(n):
        inverse[c][c] = 1
        for r in range(c + 1, n):
            inverse[r][c] = -sum(lower[r, k] * inverse[k][c] for k in range(c, r))
    return IntMatrix(inverse)


def _transpose(m: IntMatrix) -> IntMatrix:
    return IntMatrix(m.entries.T)


def unimodular_lift(m: Mod2Matrix) -> tuple[IntMatrix, IntMatrix]:
    """Small integer C with |det C| = 1 and C = m mod 2, together with C^-1.

    Elimination gives m = Q L U over GF(2) with Q a permutation and L, U unit
    triangular. The 0/1 integer versions of the three factors are unimodular,
    so C = Q L U and C^-1 = U^-1 L^-1 Q^T. The identity lifts to itself.

    Raises:
        SingularMatrixError: m is not invertible over GF(2).
    """
    n = m.n
    upper = m.bits.astype(np.int64)
    lower = np.zeros((n, n), dtype=np.int64)
    perm = list(range(n))
    for c in range(n):
        pivots = np.nonzero(upper[c:, c])[0]
        if pivots.size == 0:
            raise SingularMatrixError(f"{n}x{n} matrix is singular mod 2 and has no lift")
        p = c + int(pivots[0])
        if p != c:
            upper[[c, p]] = upper[[p, c]]
            lower[[c, p], :c] = lower[[p, c], :c]
            perm[c], perm[p] = perm[p], perm[c]
        for r in range(c + 1, n):
            if upper[r, c]:
                lower[r, c] = 1
                upper[r] = (upper[r] + upper[c]) % 2
    lower += np.eye(n, dtype=np.int64)
    q = np.zeros((n, n), dtype=np.int64)
    for i, source in enumerate(perm):
        q[source, i] = 1

    q_m, l_m, u_m = IntMatrix(q), IntMatrix(lower), IntMatrix(upper)
    lift = q_m @ l_m @ u_m
    u_inverse = _transpose(_unit_lower_inverse(_transpose(u_m)))
    lift_inverse = u_inverse @ _unit_lower_inverse(l_m) @ _transpose(q_m)
    return lift, lift_inverse


# =============================================================================
# Integer polynomials (ascending coefficient lists)
# =============================================================================


def _poly_trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial, exact over the integers."""
    if den[-1] != 1:
        raise InvalidInputError("divisor polynomial must be monic")
    rem = list(num)
    deg = len(den) - 1
    if len(rem) <= deg:
        return [0], _poly_trim(rem)
    quot = [0] * (len(rem) - deg)
    for shift in range(len(rem) - 1 - deg, -1, -1):
        coeff = rem[shift + deg]
        if coeff:
            quot[shift] = coeff
            for k, d in enumerate(den):
                rem[shift + k] -= coeff * d
    return _poly_trim(quot), _poly_trim(rem[:deg] or [0])


@lru_cache(maxsize=None)
def _cyclotomic(order: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod(poly, _cyclotomic(d))
            if any(rem):
                raise VerificationError(f"Phi_{d} does not divide x^{order} - 1")
    return tuple(poly)


def cyclotomic_polynomial(order: int) -> list[int]:
    """Coefficients of Phi_N, ascending, by exact division of x^N - 1."""
    if order < 1:
        raise InvalidInputError(f"cyclotomic order must be positive, got {order}")
    return list(_cyclotomic(order))


def totient(order: int) -> int:
    return len(_cyclotomic(order)) - 1


# =============================================================================
# Cyclotomic integers
# =============================================================================


@dataclass(frozen=True)
class CyclotomicInt:
    """c0 + c1*zeta + ... + c_{phi-1}*zeta^(phi-1) with zeta = exp(2*pi*i/N).

    coeffs always has length phi(N); use from_poly() to reduce an arbitrary
    polynomial in zeta.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidInputError(f"cyclotomic order must be positive, got {self.order}")
        coeffs = tuple(_as_int(c) for c in self.coeffs)
        if len(coeffs) != totient(self.order):
            raise InvalidInputError(
                f"Z[zeta_{self.order}] element needs {totient(self.order)} coefficients, "
                f"got {len(coeffs)}; use CyclotomicInt.from_poly to reduce"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, order: int, poly: Iterable[int]) -> CyclotomicInt:
        poly = [_as_int(c) for c in poly] or [0]
        phi = _cyclotomic(order) if order >= 1 else ()
        if not phi:
            raise InvalidInputError(f"cyclotomic order must be positive, got {order}")
        _, rem = _poly_divmod(poly, phi)
        size = len(phi) - 1
        return cls(order, tuple(rem + [0] * (size - len(rem))))

    @classmethod
    def from_int(cls, order: int, value: int) -> CyclotomicInt:
        return cls.from_poly(order, [value])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> CyclotomicInt:
        exponent = power % order
        return cls.from_poly(order, [0] * exponent + [1])

    def _coerce(self, other: object) -> CyclotomicInt:
        if isinstance(other, CyclotomicInt):
            if other.order != self.order:
                raise InvalidInputError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return CyclotomicInt.from_int(self.order, int(other))
        raise TypeError(f"cannot combine CyclotomicInt with {type(other).__name__}")

    def __add__(self, other: CyclotomicInt | int) -> CyclotomicInt:
        o = self._coerce(other)
        return CyclotomicInt(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: CyclotomicInt | int) -> CyclotomicInt:
        o = self._coerce(other)
        return CyclotomicInt(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other: int) -> CyclotomicInt:
        return self._coerce(other) - self

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: CyclotomicInt | int) -> CyclotomicInt:
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            k = int(other)
            return CyclotomicInt(self.order, tuple(k * c for c in self.coeffs))
        o = self._coerce(other)
        return CyclotomicInt.from_poly(self.order, _poly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CyclotomicInt:
        if exponent < 0:
            raise InvalidInputError(f"negative exponent {exponent}")
        result = CyclotomicInt.from_int(self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __str__(self) -> str:
        return str(list(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def galois(self, k: int) -> CyclotomicInt:
        """Image under zeta -> zeta^k (an automorphism when gcd(k, N) = 1)."""
        poly = [0] * self.order
        for j, c in enumerate(self.coeffs):
            poly[(j * k) % self.order] += c
        return CyclotomicInt.from_poly(self.order, poly)

    def conj(self) -> CyclotomicInt:
        return self.galois(-1)

    def is_real(self) -> bool:
        return self == self.conj()

    def abs_sq(self) -> CyclotomicInt:
        """z * conj(z), a real element."""
        return self * self.conj()

    def norm(self) -> int:
        """Field norm: product of all Galois conjugates, a rational integer."""
        product = CyclotomicInt.from_int(self.order, 1)
        for k in _units(self.order):
            product = product * self.galois(k)
        if any(product.coeffs[1:]):
            raise VerificationError(f"norm of {self} is not rational: {product}")
        return product.coeffs[0]

    def embed(self, dps: int = 20) -> tuple[float, float]:
        return cyc_embed(self, dps)


def _units(order: int) -> list[int]:
    return [k for k in range(1, order + 1) if math.gcd(k, order) == 1][: totient(order)]


def _evaluate(a: CyclotomicInt, k: int = 1) -> mpmath.mpc:
    """sigma_k(a) at the current mpmath precision."""
    total = mpmath.mpc(0)
    for j, c in enumerate(a.coeffs):
        if c:
            total += c * mpmath.expjpi(mpmath.mpf(2 * ((j * k) % a.order)) / a.order)
    return total


def cyc_add(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a + b


def cyc_sub(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a - b


def cyc_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a * b


def cyc_embed(a: CyclotomicInt, dps: int = 20) -> tuple[float, float]:
    """Numeric value of a under zeta -> exp(2*pi*i/N), as (real, imag).

    Used for rendering and float pre-filters only, never for exact verdicts.
    """
    z = cyc_to_mpc(a, dps)
    return float(z.real), float(z.imag)


def cyc_to_mpc(a: CyclotomicInt, dps: int = 30) -> mpmath.mpc:
    with mpmath.workdps(dps):
        return +_evaluate(a)


def cyc_div(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    """Exact quotient a / b in Z[zeta_N].

    Multiplies numerator and denominator by the other Galois conjugates of b,
    which turns the denominator into the integer norm of b.

    Raises:
        InvalidInputError: b is zero or the quotient is not integral.
    """
    b = a._coerce(b)
    if b.is_zero():
        raise InvalidInputError("division by zero in Z[zeta]")
    cofactor = CyclotomicInt.from_int(a.order, 1)
    for k in _units(a.order)[1:]:
        cofactor = cofactor * b.galois(k)
    norm = (b * cofactor).coeffs[0]
    numerator = a * cofactor
    if any(c % norm for c in numerator.coeffs):
        raise InvalidInputError(f"{a} / {b} is not an element of Z[zeta_{a.order}]")
    return CyclotomicInt(a.order, tuple(c // norm for c in numerator.coeffs))


def cyc_sign(a: CyclotomicInt) -> int:
    """Exact sign (-1, 0, 1) of a real cyclotomic integer.

    A nonzero algebraic integer has |norm| >= 1, so |a| is at least the
    reciprocal of the product of its other conjugates. The evaluation
    precision is chosen so that the rounding error stays below that bound.
    """
    if a.is_zero():
        return 0
    if not a.is_real():
        raise InvalidInputError(f"sign is undefined for non-real element {a}")
    with mpmath.workdps(30):
        others = [abs(_evaluate(a, k)) for k in _units(a.order)[1:]]
        bound_digits = sum(mpmath.log10(x + 1) for x in others)
    size_digits = math.log10(sum(abs(c) for c in a.coeffs) + 1)
    dps = int(bound_digits + size_digits) + 20
    with mpmath.workdps(dps):
        value = _evaluate(a).real
    return 1 if value > 0 else -1
