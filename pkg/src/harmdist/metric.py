"""The harmonic edit distance.

    d(a, b) = 2 * H_scs - H_|a| - H_|b|,   scs = |a| + |b| - |lcs(a, b)|

Equivalently: grow ``a`` symbol by symbol into a shortest common
supersequence, then shrink that to ``b``, where an edit touching a
string of length k costs 1/k.  The distance satisfies the three metric
axioms (see ``propcheck`` for the executable verification) and is
evaluated here as a sum of two harmonic differences, which is
algebraically identical to the defining formula but avoids cancellation
between large harmonic values.

Values are unbounded: d(empty, b) = H_|b| grows with |b|.  Clamping to
[0, 1] would break the triangle inequality, so none is applied.

All functions are pure; a shared HarmonicTable may be used concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError
from .harmonic import default_table, harmonic_diff, harmonic_exact, HarmonicTable
from .lcs import Engine, SymbolSeq, is_subsequence, lcs_len

#: Exact evaluation is guarded at |a| + |b| <= this (rational blowup).
EXACT_LENGTH_LIMIT = 10_000


@dataclass(frozen=True, slots=True)
class DistanceBreakdown:
    """Insertion and deletion halves of one distance value.

    ``insertion_cost`` grows the first string into a shortest common
    supersequence, ``deletion_cost`` shrinks that back to the second;
    ``total`` is their sum and equals the distance.
    """

    insertion_cost: float
    deletion_cost: float
    total: float


def _canonical(a: SymbolSeq, b: SymbolSeq) -> tuple[SymbolSeq, SymbolSeq]:
    # Fixed evaluation order makes symmetry hold bit for bit.
    if (len(b.ids), b.ids) < (len(a.ids), a.ids):
        return b, a
    return a, b


def distance(
    a: SymbolSeq,
    b: SymbolSeq,
    *,
    table: HarmonicTable | None = None,
    engine: Engine = "auto",
) -> float:
    """The harmonic edit distance; zero exactly when a == b."""
    if a.ids == b.ids:
        return 0.0
    if table is None:
        table = default_table()
    a, b = _canonical(a, b)
    la, lb = len(a.ids), len(b.ids)
    scs = la + lb - lcs_len(a, b, engine)
    return harmonic_diff(table, la, scs) + harmonic_diff(table, lb, scs)


def distance_decomposed(
    a: SymbolSeq,
    b: SymbolSeq,
    *,
    table: HarmonicTable | None = None,
    engine: Engine = "auto",
) -> DistanceBreakdown:
    """Split the distance into its insertion and deletion components.

    Components are tied to the argument order (grow ``a``, then shrink to
    ``b``); the total is order-independent and equals ``distance(a, b)``.
    """
    if table is None:
        table = default_table()
    la, lb = len(a.ids), len(b.ids)
    if a.ids == b.ids:
        return DistanceBreakdown(0.0, 0.0, 0.0)
    scs = la + lb - lcs_len(a, b, engine)
    ins = harmonic_diff(table, la, scs)
    dele = harmonic_diff(table, lb, scs)
    return DistanceBreakdown(ins, dele, ins + dele)


def distance_subsequence(
    a: SymbolSeq,
    b: SymbolSeq,
    *,
    table: HarmonicTable | None = None,
) -> float:
    """Fast path when a is a subsequence of b: d = H_|b| - H_|a|.

    The caller owns the precondition; it is asserted here, so violations
    surface in normal runs and are skipped under ``python -O``.
    """
    assert is_subsequence(a, b), "distance_subsequence requires a subseq of b"
    if table is None:
        table = default_table()
    return harmonic_diff(table, len(a.ids), len(b.ids))


def distance_exact(
    a: SymbolSeq,
    b: SymbolSeq,
    engine: Engine = "auto",
) -> Fraction:
    """The defining formula in exact rational arithmetic."""
    la, lb = len(a.ids), len(b.ids)
    if la + lb > EXACT_LENGTH_LIMIT:
        raise CapacityError(
            f"exact distance is limited to |a| + |b| <= {EXACT_LENGTH_LIMIT}, "
            f"got {la + lb}"
        )
    if a.ids == b.ids:
        return Fraction(0)
    scs = la + lb - lcs_len(a, b, engine)
    return 2 * harmonic_exact(scs) - harmonic_exact(la) - harmonic_exact(lb)


def _distance_from_lengths(
    la: int, lb: int, lcs: int, table: HarmonicTable
) -> float:
    """Distance forced by the three lengths alone (shared with propcheck)."""
    scs = la + lb - lcs
    return harmonic_diff(table, la, scs) + harmonic_diff(table, lb, scs)


def _distance_exact_from_lengths(la: int, lb: int, lcs: int) -> Fraction:
    scs = la + lb - lcs
    return 2 * harmonic_exact(scs) - harmonic_exact(la) - harmonic_exact(lb)
