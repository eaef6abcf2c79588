"""Harmonic numbers H_n = sum(1/i for i in 1..n), precomputed and exact.

Three tiers serve the rest of the library:

* ``HarmonicTable`` holds double-precision prefix values H_0..H_N.
* Beyond the table, a four-term asymptotic expansion takes over.
* ``harmonic_exact`` returns H_n as an exact rational, the reference
  oracle for every floating-point tolerance in this package.

A ``HarmonicTable`` is immutable after construction and safe to share
across threads; every function here is pure.
"""

from __future__ import annotations

import math
import os
from array import array
from fractions import Fraction

from .errors import CapacityError

# Exact rationals are plain stdlib fractions: auto-reduced, positive
# denominator, arbitrary precision.
ExactHarmonic = Fraction

EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

#: Consecutive table entries must satisfy |H_n - H_{n-1} - 1/n| <= this.
STEP_BOUND = 2.0 ** -50

#: Spans up to this many terms are summed directly instead of differenced.
DIRECT_SUM_SPAN = 64

#: Largest index served by exact rational arithmetic.
EXACT_LIMIT = 10_000

DEFAULT_CAPACITY = 1 << 20

# The step bound pins each entry to within half an ulp of its neighbour,
# so the stored sequence behaves like rounded single additions and its
# deviation from H_n grows as a bounded random walk.  Measured over the
# full range, the walk stays under 1e-12 only through about 2^20 entries;
# larger requests are clamped.  The floor keeps the asymptotic tail
# accurate enough (error < 1/(252 n^6)) that the table/tail boundary
# stays within 1e-12 of 1/(N+1).
MIN_CAPACITY = 64
MAX_CAPACITY = 1 << 20

_ENV_CAPACITY = "HARMDIST_TABLE_SIZE"


class HarmonicTable:
    """Prefix table of H_0..H_N in double precision.

    Construction uses error-feedback summation: the exact running sum is
    carried in a hi/lo double-double pair, and each stored entry is the
    representable value nearest that sum among those within ``STEP_BOUND``
    of ``previous + 1/n``.  The clamp makes the per-step invariant hold by
    construction; the feedback steers the stored sequence toward the true
    prefix sums wherever the float grid allows.
    """

    __slots__ = ("max_index", "values")

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 0:
            raise ValueError(f"capacity must be nonnegative, got {capacity}")
        n = min(max(capacity, MIN_CAPACITY), MAX_CAPACITY)
        values = array("d", bytes(8 * (n + 1)))
        hi = 0.0
        lo = 0.0
        v = 0.0
        nextafter = math.nextafter
        for i in range(1, n + 1):
            x = 1.0 / i
            # two-sum of hi + x, error folded into lo
            s = hi + x
            b = s - hi
            lo += (hi - (s - b)) + (x - b)
            t = s + lo
            lo -= t - s
            hi = t
            # plain rounded step, nudged toward the exact sum when the
            # neighbouring float still honours the step bound
            c = v + x
            if c != hi:
                nb = nextafter(c, hi)
                if abs((nb - v) - x) <= STEP_BOUND:
                    c = nb
            v = c
            values[i] = v
        self.max_index = n
        self.values = values

    def __repr__(self) -> str:
        return f"HarmonicTable(max_index={self.max_index})"


_default_table: HarmonicTable | None = None


def default_table() -> HarmonicTable:
    """Lazily built process-wide table; HARMDIST_TABLE_SIZE overrides the
    capacity (clamped to [MIN_CAPACITY, MAX_CAPACITY])."""
    global _default_table
    if _default_table is None:
        raw = os.environ.get(_ENV_CAPACITY)
        capacity = int(raw) if raw else DEFAULT_CAPACITY
        _default_table = HarmonicTable(capacity)
    return _default_table


def _tail(n: int) -> float:
    # ln(n) + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4); next term is
    # -1/(252 n^6), far below 1e-12 for every n past MIN_CAPACITY.
    inv = 1.0 / n
    inv2 = inv * inv
    return (
        math.log(n)
        + EULER_GAMMA
        + inv / 2.0
        - inv2 / 12.0
        + inv2 * inv2 / 120.0
    )


def harmonic(table: HarmonicTable, n: int) -> float:
    """H_n from the table, or from the asymptotic expansion for n beyond it."""
    if n < 0:
        raise ValueError(f"harmonic index must be nonnegative, got {n}")
    if n <= table.max_index:
        return table.values[n]
    return _tail(n)


def harmonic_diff(table: HarmonicTable, lo: int, hi: int) -> float:
    """H_hi - H_lo, summed directly over short spans to avoid cancellation.

    Requires lo <= hi.  Spans of at most DIRECT_SUM_SPAN terms inside the
    table are evaluated as an exactly rounded sum of 1/i; longer spans
    fall back to differencing two harmonic values.
    """
    if lo < 0:
        raise ValueError(f"harmonic index must be nonnegative, got {lo}")
    if lo > hi:
        raise ValueError(f"harmonic_diff requires lo <= hi, got ({lo}, {hi})")
    if lo == hi:
        return 0.0
    if hi - lo <= DIRECT_SUM_SPAN and hi <= table.max_index:
        return math.fsum(1.0 / i for i in range(lo + 1, hi + 1))
    return harmonic(table, hi) - harmonic(table, lo)


_exact_cache: list[Fraction] = [Fraction(0)]


def harmonic_exact(n: int) -> Fraction:
    """H_n as an exact rational in lowest terms; guarded at EXACT_LIMIT."""
    if n < 0:
        raise ValueError(f"harmonic index must be nonnegative, got {n}")
    if n > EXACT_LIMIT:
        raise CapacityError(
            f"exact harmonic numbers are limited to n <= {EXACT_LIMIT}, got {n}"
        )
    cache = _exact_cache
    while len(cache) <= n:
        cache.append(cache[-1] + Fraction(1, len(cache)))
    return cache[n]
