"""Executable verification of the metric axioms and supporting identities.

Two arithmetic tiers share one harness.  The rational tier evaluates
every distance exactly and demands exact inequalities; it is the
authority.  The float tier runs the production code path and tolerates
bounded rounding (AXIOM_TOLERANCE for axioms, LEMMA_TOLERANCE for the
equalities).  Checks run either exhaustively over every string on a
small alphabet or statistically over seeded random samples; in both
cases the report is a pure function of (config, seed).

Violations are recorded as counterexamples carrying a signed slack,
negative meaning broken.  Slack is the margin natural to each property:

* symmetry          -|d(a,b) - d(b,a)|
* identity          -d(a,a) on the diagonal; off it, d(a,b) minus the
                    smallest distance the formula permits for distinct
                    strings of those lengths
* triangle          d(a,b) + d(b,c) - d(a,c)
* supersequence split   -|d(a,b) - (d to scs + d from scs)|
* chain additivity      -|d(a,c) - d(a,b) - d(b,c)|
* lcs triangle          d(a, lcs) + d(lcs, b) - d(a,b)

Pair-scoped properties pad their witness to a triple with the empty
string.  Checking is embarrassingly parallel in principle; this
implementation is sequential, and counterexamples are canonically
sorted so any future parallel runner must produce the identical report.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import CapacityError
from .harmonic import HarmonicTable, default_table, harmonic_diff, harmonic_exact
from .lcs import SymbolSeq, is_subsequence, lcs_len
from .metric import (
    _distance_exact_from_lengths,
    _distance_from_lengths,
    distance,
    distance_exact,
)

AXIOM_TOLERANCE = 1e-9
LEMMA_TOLERANCE = 1e-12

#: Exhaustive enumeration refuses universes larger than this.
MAX_UNIVERSE = 100_000

#: Counterexamples kept per property; counting continues past the cap.
MAX_STORED = 1_000

EMPTY = SymbolSeq(())

Mode = Literal["exhaustive", "random"]

# A checker re-evaluates one property on an arbitrary triple and returns
# (violated, slack, exact_slack); shrink uses it to test deletions.
Checker = Callable[
    [tuple[SymbolSeq, SymbolSeq, SymbolSeq]],
    tuple[bool, float, Fraction | None],
]


@dataclass(frozen=True)
class GenConfig:
    """Generation parameters for one verification run."""

    alphabet_size: int
    max_length: int
    sample_count: int = 1_000
    seed: int = 0
    mode: Mode = "exhaustive"

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        if self.max_length < 0:
            raise ValueError("max_length must be nonnegative")
        if self.sample_count < 0:
            raise ValueError("sample_count must be nonnegative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass
class Counterexample:
    """A witness triple for one violated property."""

    triple: tuple[SymbolSeq, SymbolSeq, SymbolSeq]
    property: str
    slack: float
    exact_slack: Fraction | None = None
    checker: Checker | None = field(default=None, repr=False, compare=False)


@dataclass
class PropertyReport:
    name: str
    checked: int
    violations: int
    counterexamples: list[Counterexample]  # capped at MAX_STORED entries
    min_slack: float | None
    min_slack_exact: Fraction | None = None
    seed: int | None = None


@dataclass
class VerificationReport:
    properties: list[PropertyReport]

    @property
    def total_violations(self) -> int:
        return sum(p.violations for p in self.properties)

    def counterexamples(self) -> list[Counterexample]:
        return [cx for p in self.properties for cx in p.counterexamples]

    def as_text(self) -> str:
        lines = []
        for p in self.properties:
            slack = "n/a" if p.min_slack is None else f"{p.min_slack:.12e}"
            if p.min_slack_exact is not None:
                slack += f" (exact {p.min_slack_exact})"
            seed = "n/a" if p.seed is None else str(p.seed)
            lines.append(
                f"{p.name}: checked={p.checked} violations={p.violations} "
                f"min_slack={slack} seed={seed}"
            )
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "properties": [
                {
                    "property": p.name,
                    "checked": p.checked,
                    "violations": p.violations,
                    "min_slack": p.min_slack,
                    "min_slack_exact": (
                        None
                        if p.min_slack_exact is None
                        else str(p.min_slack_exact)
                    ),
                    "seed": p.seed,
                }
                for p in self.properties
            ],
            "total_violations": self.total_violations,
        }


# ---------------------------------------------------------------------------
# generators


def universe(alphabet_size: int, max_length: int) -> list[SymbolSeq]:
    """Every string of length <= max_length, ordered by length then ids."""
    total = 0
    count = 1
    for _ in range(max_length + 1):
        total += count
        count *= alphabet_size
        if total > MAX_UNIVERSE:
            raise CapacityError(
                f"exhaustive universe exceeds {MAX_UNIVERSE} strings"
            )
    out = []
    for length in range(max_length + 1):
        for ids in itertools.product(range(alphabet_size), repeat=length):
            out.append(SymbolSeq(ids))
    return out


def _random_seq(rng: random.Random, alphabet_size: int, max_length: int) -> SymbolSeq:
    length = rng.randint(0, max_length)
    return SymbolSeq(tuple(rng.randrange(alphabet_size) for _ in range(length)))


def _mutate(rng: random.Random, seq: SymbolSeq, alphabet_size: int) -> SymbolSeq:
    ids = list(seq.ids)
    for _ in range(rng.randint(0, len(ids) // 4 + 1)):
        if ids and rng.random() < 0.5:
            del ids[rng.randrange(len(ids))]
        else:
            ids.insert(rng.randint(0, len(ids)), rng.randrange(alphabet_size))
    return SymbolSeq(tuple(ids))


def random_triples(
    config: GenConfig,
) -> Iterable[tuple[SymbolSeq, SymbolSeq, SymbolSeq]]:
    """Seeded triples, alternating independent draws with mutated copies of
    a common ancestor (near-equal triples have the tightest triangles)."""
    rng = random.Random(config.seed)
    k, ml = config.alphabet_size, config.max_length
    for i in range(config.sample_count):
        if i % 2 == 0:
            yield (
                _random_seq(rng, k, ml),
                _random_seq(rng, k, ml),
                _random_seq(rng, k, ml),
            )
        else:
            root = _random_seq(rng, k, ml)
            yield (
                _mutate(rng, root, k),
                _mutate(rng, root, k),
                _mutate(rng, root, k),
            )


def _delete_some(rng: random.Random, ids: tuple[int, ...]) -> tuple[int, ...]:
    keep = rng.random()
    return tuple(s for s in ids if rng.random() < keep)


def random_chains(
    config: GenConfig,
) -> Iterable[tuple[SymbolSeq, SymbolSeq, SymbolSeq]]:
    """Seeded chains a <= b <= c under the subsequence order, generated by
    random deletions from a random top string."""
    rng = random.Random(config.seed)
    for _ in range(config.sample_count):
        c = _random_seq(rng, config.alphabet_size, config.max_length)
        b = _delete_some(rng, c.ids)
        a = _delete_some(rng, b)
        yield SymbolSeq(a), SymbolSeq(b), c


def all_pairs(
    strings: Sequence[SymbolSeq],
) -> Iterable[tuple[SymbolSeq, SymbolSeq]]:
    return itertools.product(strings, strings)


def random_pairs(config: GenConfig) -> Iterable[tuple[SymbolSeq, SymbolSeq]]:
    rng = random.Random(config.seed)
    for _ in range(config.sample_count):
        yield (
            _random_seq(rng, config.alphabet_size, config.max_length),
            _random_seq(rng, config.alphabet_size, config.max_length),
        )


# ---------------------------------------------------------------------------
# distance providers

Dist = Callable[[SymbolSeq, SymbolSeq], float | Fraction]


def _default_dist(rational: bool, table: HarmonicTable) -> Dist:
    if rational:
        return distance_exact
    return lambda a, b: distance(a, b, table=table)


def broken_min_lcs_distance(
    *, rational: bool, table: HarmonicTable | None = None
) -> Dist:
    """Deliberately wrong distance with the LCS length replaced by
    min(|a|, |b|); exists to prove the harness catches planted bugs."""
    if rational:
        return lambda a, b: _distance_exact_from_lengths(
            len(a.ids), len(b.ids), min(len(a.ids), len(b.ids))
        )
    tab = table if table is not None else default_table()
    return lambda a, b: _distance_from_lengths(
        len(a.ids), len(b.ids), min(len(a.ids), len(b.ids)), tab
    )


FIXTURES: dict[str, Callable[..., Dist]] = {
    "broken-lcs": broken_min_lcs_distance,
}


def _min_positive(la: int, lb: int, rational: bool, table: HarmonicTable):
    # Smallest distance the formula allows for distinct strings of these
    # lengths: lcs <= min, and lcs <= min-1 when the lengths coincide.
    floor_lcs = min(la, lb) - (1 if la == lb else 0)
    if rational:
        return _distance_exact_from_lengths(la, lb, floor_lcs)
    return _distance_from_lengths(la, lb, floor_lcs, table)


# ---------------------------------------------------------------------------
# harness plumbing


class _Collector:
    """Accumulates checks for one property."""

    def __init__(self, name: str, rational: bool, tolerance: float, checker: Checker):
        self.name = name
        self.rational = rational
        self.tolerance = tolerance
        self.checker = checker
        self.checked = 0
        self.counterexamples: list[Counterexample] = []
        self.overflow = 0
        self.min_slack = None
        self.min_slack_exact = None

    def record(self, triple, slack, exact_slack) -> None:
        self.checked += 1
        slack = slack + 0.0  # normalize -0.0 away
        key = exact_slack if self.rational else slack
        best = self.min_slack_exact if self.rational else self.min_slack
        if best is None or key < best:
            self.min_slack = float(slack)
            self.min_slack_exact = exact_slack
        violated = (
            exact_slack < 0 if self.rational else slack < -self.tolerance
        )
        if violated:
            if len(self.counterexamples) < MAX_STORED:
                self.counterexamples.append(
                    Counterexample(
                        triple, self.name, float(slack), exact_slack, self.checker
                    )
                )
            else:
                self.overflow += 1

    def report(self, seed: int | None) -> PropertyReport:
        cxs = sorted(
            self.counterexamples,
            key=lambda cx: (
                cx.slack,
                cx.triple[0].ids,
                cx.triple[1].ids,
                cx.triple[2].ids,
            ),
        )
        return PropertyReport(
            self.name,
            self.checked,
            len(cxs) + self.overflow,
            cxs,
            self.min_slack,
            self.min_slack_exact if self.rational else None,
            seed,
        )


def _make_checkers(
    dist: Dist, rational: bool, table: HarmonicTable
) -> dict[str, Checker]:
    def split(value):
        if rational:
            return float(value), value
        return value, None

    def symmetry(t):
        slack, exact = split(-abs(dist(t[0], t[1]) - dist(t[1], t[0])))
        return (exact < 0 if rational else slack < -AXIOM_TOLERANCE), slack, exact

    def identity(t):
        a, b = t[0], t[1]
        if a.ids == b.ids:
            slack, exact = split(-dist(a, b))
        else:
            margin = _min_positive(len(a.ids), len(b.ids), rational, table)
            slack, exact = split(dist(a, b) - margin)
        return (exact < 0 if rational else slack < -AXIOM_TOLERANCE), slack, exact

    def triangle(t):
        a, b, c = t
        slack, exact = split(dist(a, b) + dist(b, c) - dist(a, c))
        return (exact < 0 if rational else slack < -AXIOM_TOLERANCE), slack, exact

    return {"symmetry": symmetry, "identity": identity, "triangle": triangle}


def verify_metric_axioms(
    config: GenConfig,
    *,
    rational: bool = True,
    dist: Dist | None = None,
    table: HarmonicTable | None = None,
) -> VerificationReport:
    """Check symmetry, identity of indiscernibles, and the triangle
    inequality, exhaustively or over seeded random triples.

    Violations are data, not errors: they come back as counterexamples
    inside the report.
    """
    if table is None:
        table = default_table()
    if dist is None:
        dist = _default_dist(rational, table)
    checkers = _make_checkers(dist, rational, table)
    tol = AXIOM_TOLERANCE
    collectors = {
        name: _Collector(name, rational, tol, checkers[name])
        for name in ("symmetry", "identity", "triangle")
    }
    if config.mode == "exhaustive":
        _axioms_exhaustive(config, dist, rational, table, collectors)
        seed = None
    else:
        _axioms_random(config, dist, rational, table, collectors)
        seed = config.seed
    return VerificationReport(
        [collectors[n].report(seed) for n in ("symmetry", "identity", "triangle")]
    )


def _axioms_exhaustive(config, dist, rational, table, collectors):
    strings = universe(config.alphabet_size, config.max_length)
    n = len(strings)
    sym = collectors["symmetry"]
    ident = collectors["identity"]
    tri = collectors["triangle"]

    # Pair-distance cache; symmetry is checked from explicit evaluations
    # of both argument orders before the cache is trusted.
    d = [[None] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = dist(strings[i], strings[i])
        ident.record(
            (strings[i], strings[i], EMPTY), *_eval(ident, strings[i], strings[i])
        )
    for i in range(n):
        for j in range(i + 1, n):
            dij = dist(strings[i], strings[j])
            dji = dist(strings[j], strings[i])
            d[i][j] = d[j][i] = dij
            gap = -abs(dij - dji)
            slack, exact = (float(gap), gap) if rational else (gap, None)
            sym.record((strings[i], strings[j], EMPTY), slack, exact)
            ident.record(
                (strings[i], strings[j], EMPTY),
                *_eval(ident, strings[i], strings[j]),
            )
    for i in range(n):
        di = d[i]
        for j in range(n):
            dij = di[j]
            dj = d[j]
            for k in range(n):
                gap = dij + dj[k] - di[k]
                slack, exact = (float(gap), gap) if rational else (gap, None)
                tri.record((strings[i], strings[j], strings[k]), slack, exact)


def _eval(collector, a, b):
    _, slack, exact = collector.checker((a, b, EMPTY))
    return slack, exact


def _axioms_random(config, dist, rational, table, collectors):
    sym = collectors["symmetry"]
    ident = collectors["identity"]
    tri = collectors["triangle"]
    for a, b, c in random_triples(config):
        _, s, e = sym.checker((a, b, EMPTY))
        sym.record((a, b, EMPTY), s, e)
        ident.record((a, a, EMPTY), *_eval(ident, a, a))
        ident.record((a, b, EMPTY), *_eval(ident, a, b))
        _, s, e = tri.checker((a, b, c))
        tri.record((a, b, c), s, e)


# ---------------------------------------------------------------------------
# lemma suites


def _run_pairs(
    name: str,
    items: Iterable,
    checker: Checker,
    rational: bool,
    tolerance: float,
    seed: int | None,
) -> VerificationReport:
    collector = _Collector(name, rational, tolerance, checker)
    for triple in items:
        _, slack, exact = checker(triple)
        collector.record(triple, slack, exact)
    return VerificationReport([collector.report(seed)])


def verify_lemma_scs(
    pairs: Iterable[tuple[SymbolSeq, SymbolSeq]],
    *,
    rational: bool = True,
    table: HarmonicTable | None = None,
    seed: int | None = None,
) -> VerificationReport:
    """The distance splits exactly at a shortest common supersequence:
    d(a, b) = d(a, scs) + d(scs, b), both terms needing only lengths."""
    tab = table if table is not None else default_table()

    def checker(t):
        a, b = t[0], t[1]
        la, lb = len(a.ids), len(b.ids)
        scs = la + lb - lcs_len(a, b)
        if rational:
            lhs = distance_exact(a, b)
            rhs = _distance_exact_from_lengths(la, lb, la + lb - scs)
            gap = -abs(lhs - rhs)
            return gap < 0, float(gap), gap
        lhs = distance(a, b, table=tab)
        rhs = _distance_from_lengths(la, lb, la + lb - scs, tab)
        gap = -abs(lhs - rhs)
        return gap < -LEMMA_TOLERANCE, gap, None

    triples = ((a, b, EMPTY) for a, b in pairs)
    return _run_pairs("lemma_scs", triples, checker, rational, LEMMA_TOLERANCE, seed)


def verify_lemma_chain(
    chains: Iterable[tuple[SymbolSeq, SymbolSeq, SymbolSeq]],
    *,
    rational: bool = True,
    table: HarmonicTable | None = None,
    seed: int | None = None,
) -> VerificationReport:
    """Distances add along subsequence chains a <= b <= c:
    d(a, c) = d(a, b) + d(b, c).

    Every chain must satisfy the subsequence precondition; a violation is
    a generator bug and raises immediately.
    """
    tab = table if table is not None else default_table()
    dist = _default_dist(rational, tab)

    def checker(t):
        a, b, c = t
        if not (is_subsequence(a, b) and is_subsequence(b, c)):
            return False, 0.0, Fraction(0) if rational else None
        gap = -abs(dist(a, c) - dist(a, b) - dist(b, c))
        if rational:
            return gap < 0, float(gap), gap
        return gap < -LEMMA_TOLERANCE, gap, None

    def validated():
        for a, b, c in chains:
            if not (is_subsequence(a, b) and is_subsequence(b, c)):
                raise ValueError(
                    "chain generator produced a non-chain triple: "
                    f"{a.ids} {b.ids} {c.ids}"
                )
            yield a, b, c

    return _run_pairs(
        "lemma_chain", validated(), checker, rational, LEMMA_TOLERANCE, seed
    )


def verify_lemma_lcs_triangle(
    pairs: Iterable[tuple[SymbolSeq, SymbolSeq]],
    *,
    rational: bool = True,
    table: HarmonicTable | None = None,
    seed: int | None = None,
) -> VerificationReport:
    """Routing through a longest common subsequence never undercuts the
    direct distance: d(a, b) <= d(a, lcs) + d(lcs, b); slack must be >= 0."""
    tab = table if table is not None else default_table()

    def checker(t):
        a, b = t[0], t[1]
        la, lb = len(a.ids), len(b.ids)
        lcs = lcs_len(a, b)
        if rational:
            lhs = distance_exact(a, b)
            rhs = (
                (harmonic_exact(la) - harmonic_exact(lcs))
                + (harmonic_exact(lb) - harmonic_exact(lcs))
            )
            gap = rhs - lhs
            return gap < 0, float(gap), gap
        lhs = distance(a, b, table=tab)
        rhs = harmonic_diff(tab, lcs, la) + harmonic_diff(tab, lcs, lb)
        gap = rhs - lhs
        return gap < -AXIOM_TOLERANCE, gap, None

    triples = ((a, b, EMPTY) for a, b in pairs)
    return _run_pairs(
        "lemma_lcs_triangle", triples, checker, rational, AXIOM_TOLERANCE, seed
    )


# ---------------------------------------------------------------------------
# shrinking


def shrink(cx: Counterexample) -> Counterexample:
    """Greedily delete single symbols while the violation persists.

    The input must genuinely violate its property (checked, errors
    otherwise).  The result is locally minimal: no further single-symbol
    deletion keeps the property violated, which also makes shrinking
    idempotent.
    """
    if cx.checker is None:
        raise ValueError("counterexample carries no checker; cannot shrink")
    violated, _, _ = cx.checker(cx.triple)
    if not violated:
        raise ValueError("shrink requires a violating counterexample")
    triple = list(cx.triple)
    improved = True
    while improved:
        improved = False
        for which in range(3):
            ids = triple[which].ids
            for pos in range(len(ids)):
                candidate = triple.copy()
                candidate[which] = SymbolSeq(ids[:pos] + ids[pos + 1 :])
                ok, _, _ = cx.checker(tuple(candidate))
                if ok:
                    triple = candidate
                    improved = True
                    break
            if improved:
                break
    _, slack, exact = cx.checker(tuple(triple))
    return Counterexample(tuple(triple), cx.property, float(slack), exact, cx.checker)
