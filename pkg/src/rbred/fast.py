"""Logarithmic-time and closed-form evaluations of r(n).

Everything is exact integer arithmetic; ``floor(log2 n)`` is taken from the
bit length, never from a float. Inputs are restricted to ``n < 2**62`` so
results stay inside 64-bit unsigned range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from rbred.errors import AllRedError, DivisibilityViolation, InputOverflowError, InvalidCoordError

LIMIT = 1 << 62
MAX_ROW = 61


def _guard(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n >= LIMIT:
        raise InputOverflowError(f"n must be below 2**62, got {n}")


def _guard_row(i: int) -> None:
    if i < 0:
        raise ValueError(f"row index must be non-negative, got {i}")
    if i > MAX_ROW:
        raise InputOverflowError(f"row index must be at most {MAX_ROW}, got {i}")


def floor_log2(n: int) -> int:
    if n < 1:
        raise ValueError("floor_log2 needs n >= 1")
    return n.bit_length() - 1


def peel_step(n: int) -> tuple[int, int]:
    """(p, q) for n >= 8: the maximal tree on n keys loses its two bottom
    levels and the black nodes above them, leaving p nodes, and those
    removed levels hold q red nodes."""
    lg = floor_log2(n)
    m = (n - (1 << lg) + 1 + 3) // 4
    p = (1 << (lg - 2)) + m - 1
    q = n - (1 << (lg - 1)) - 2 * m + 1
    return p, q


def r_rec(n: int) -> int:
    _guard(n)
    total = 0
    while n >= 8:
        n, q = peel_step(n)
        total += q
    if n == 0:
        return total
    return total + n - floor_log2(n)


def xi(i: int) -> int:
    """First entry of triangle row i: ceil(2 (2^i - 1) / 3)."""
    _guard_row(i)
    return (2 * ((1 << i) - 1) + 2) // 3


def eta(i: int) -> int:
    """Offset added across the second half of triangle row i: floor((2^(i+1) + 1) / 3)."""
    _guard_row(i)
    return ((1 << (i + 1)) + 1) // 3


@dataclass(frozen=True, order=True)
class TriangleCoord:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 0 or not 1 <= self.j <= (1 << self.i):
            raise InvalidCoordError(f"no triangle cell ({self.i}, {self.j})")


def n_to_coord(n: int) -> TriangleCoord:
    _guard(n)
    i = (n + 1).bit_length() - 1
    return TriangleCoord(i, n + 2 - (1 << i))


def coord_to_n(c: TriangleCoord) -> int:
    return (1 << c.i) - 2 + c.j


def triangle_t(c: TriangleCoord | tuple[int, int]) -> int:
    """Entry t(i, j) of the r(n) triangle via the row-to-row recurrence."""
    if not isinstance(c, TriangleCoord):
        c = TriangleCoord(*c)
    _guard_row(c.i)
    i, j = c.i, c.j
    acc = 0
    while i >= 2:
        half = 1 << (i - 1)
        if j == 1:
            return acc + xi(i)
        if j <= half:
            acc += xi(i - 1)
        elif j == half + 1:
            return acc + (1 << i) - 1
        else:
            acc += eta(i)
            j -= half
        i -= 1
    return acc + i


def r_tri(n: int) -> int:
    return triangle_t(n_to_coord(n))


@dataclass(frozen=True)
class BitWeights:
    a: int
    e: int
    o: int


def bit_weights(n: int) -> BitWeights:
    """Set bits of n overall, at even positions (b0, b2, ...) and at odd positions."""
    if n < 1:
        raise ValueError("bit weights are defined for n >= 1")
    odd_mask = int("a" * ((n.bit_length() + 3) // 4), 16)
    o = (n & odd_mask).bit_count()
    a = n.bit_count()
    return BitWeights(a, a - o, o)


def r_closed(n: int) -> int:
    _guard(n)
    if n == 0:
        return 0
    w = bit_weights(n)
    num = 2 * n + w.a + w.o
    if num % 3:
        raise DivisibilityViolation(f"2n + a(n) + o(n) = {num} is not divisible by 3 (n={n})")
    return num // 3 - (floor_log2(n) + 1) // 2


def r_special_pow2m1(k: int) -> int:
    """r(2^k - 1) for a perfect tree of k levels."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_ROW:
        raise InputOverflowError(f"k must be at most {MAX_ROW}, got {k}")
    num = 2 * ((1 << k) - 1) + k % 2
    assert num % 3 == 0
    return num // 3


def red_black_ratio(n: int) -> Fraction:
    if n < 1:
        raise ValueError("ratio needs n >= 1")
    r = r_closed(n)
    if n == r:
        raise AllRedError(f"every node is red for n={n}; no black node to divide by")
    return Fraction(r, n - r)
