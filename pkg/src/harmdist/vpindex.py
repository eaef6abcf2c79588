"""Vantage-point tree over a corpus of symbol sequences.

Because the harmonic edit distance is a true metric, a subtree whose
elements all lie within (or beyond) a pivot radius can be skipped
whenever the triangle inequality proves no member can qualify.  Prune
decisions carry a safety margin of PRUNE_MARGIN so float rounding can
never cause a false prune; query results are therefore exactly what a
linear scan returns.

Trees are immutable after ``build`` and safe for concurrent queries;
building is single-threaded and fully determined by (corpus order, seed).

Optional on-disk format (little-endian): magic ``HVPT``, version u16,
seed u64, corpus size u64, node count u64, then one record per node with
explicit child offsets into the node array.
"""

from __future__ import annotations

import heapq
import random
import struct
from dataclasses import dataclass, field
from pathlib import Path

from .errors import IndexFormatError
from .harmonic import HarmonicTable, default_table
from .lcs import Engine, SymbolSeq
from .metric import distance

LEAF_SIZE = 8
PRUNE_MARGIN = 1e-9

MAGIC = b"HVPT"
FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class _Leaf:
    indices: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class _Inner:
    pivot: int
    radius: float
    inside: "_Leaf | _Inner"
    outside: "_Leaf | _Inner"


_Node = _Leaf | _Inner


@dataclass(frozen=True, slots=True)
class PruningStats:
    """Distance-evaluation counts for a query batch."""

    corpus_size: int
    evaluations: tuple[int, ...]

    @property
    def mean_fraction_scanned(self) -> float:
        if not self.evaluations:
            return 0.0
        total = sum(self.evaluations)
        return total / (len(self.evaluations) * self.corpus_size)


@dataclass
class VpTree:
    corpus: tuple[SymbolSeq, ...]
    root: _Node
    build_seed: int
    table: HarmonicTable = field(compare=False, repr=False)
    engine: Engine = field(default="auto", compare=False)

    @classmethod
    def build(
        cls,
        corpus,
        seed: int,
        *,
        table: HarmonicTable | None = None,
        engine: Engine = "auto",
    ) -> "VpTree":
        """Build a tree over the corpus.

        Pivots are seeded pseudo-random draws; the radius is the lower
        median of the distances from the pivot to the node's remaining
        elements, which follow the pivot inside when at or under the
        radius (ties resolved by corpus index).  Recursion stops at
        LEAF_SIZE elements.
        """
        corpus = tuple(corpus)
        if not corpus:
            raise ValueError("cannot build an index over an empty corpus")
        if not 0 <= seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if table is None:
            table = default_table()
        rng = random.Random(seed)

        def split(indices: list[int]) -> _Node:
            if len(indices) <= LEAF_SIZE:
                return _Leaf(tuple(indices))
            pivot = indices[rng.randrange(len(indices))]
            ranked = sorted(
                (distance(corpus[pivot], corpus[i], table=table, engine=engine), i)
                for i in indices
                if i != pivot
            )
            mid = (len(ranked) - 1) // 2
            radius = ranked[mid][0]
            inside = [pivot] + [i for _, i in ranked[: mid + 1]]
            outside = [i for _, i in ranked[mid + 1 :]]
            return _Inner(pivot, radius, split(inside), split(outside))

        root = split(list(range(len(corpus))))
        return cls(corpus, root, seed, table, engine)

    def _cached_distance(self, q: SymbolSeq, cache: dict[int, float]):
        corpus, table, engine = self.corpus, self.table, self.engine

        def dist(i: int) -> float:
            v = cache.get(i)
            if v is None:
                v = distance(q, corpus[i], table=table, engine=engine)
                cache[i] = v
            return v

        return dist

    def range_query(self, q: SymbolSeq, r: float) -> set[int]:
        """Exactly the corpus indices within distance r of q."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        hits, _ = self._range(q, r)
        return hits

    def _range(self, q: SymbolSeq, r: float) -> tuple[set[int], int]:
        cache: dict[int, float] = {}
        dist = self._cached_distance(q, cache)
        hits: set[int] = set()
        stack: list[_Node] = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, _Leaf):
                for i in node.indices:
                    if dist(i) <= r:
                        hits.add(i)
                continue
            dp = dist(node.pivot)
            if dp - r <= node.radius + PRUNE_MARGIN:
                stack.append(node.inside)
            if dp + r >= node.radius - PRUNE_MARGIN:
                stack.append(node.outside)
        return hits, len(cache)

    def knn(self, q: SymbolSeq, k: int) -> list[tuple[int, float]]:
        """The k nearest corpus elements, ascending by (distance, index)."""
        if k < 1:
            raise ValueError("k must be positive")
        best, _ = self._knn(q, k)
        return best

    def _knn(self, q: SymbolSeq, k: int) -> tuple[list[tuple[int, float]], int]:
        cache: dict[int, float] = {}
        dist = self._cached_distance(q, cache)
        # max-heap over (distance, index) via negation; heap[0] is the
        # current worst of the k best
        heap: list[tuple[float, int]] = []

        def offer(i: int) -> None:
            di = dist(i)
            if len(heap) < k:
                heapq.heappush(heap, (-di, -i))
            else:
                worst_d, worst_i = -heap[0][0], -heap[0][1]
                if (di, i) < (worst_d, worst_i):
                    heapq.heapreplace(heap, (-di, -i))

        def bound() -> float:
            return -heap[0][0] if len(heap) == k else float("inf")

        def visit(node: _Node) -> None:
            if isinstance(node, _Leaf):
                for i in node.indices:
                    offer(i)
                return
            dp = dist(node.pivot)
            if dp <= node.radius:
                order = ((node.inside, True), (node.outside, False))
            else:
                order = ((node.outside, False), (node.inside, True))
            for child, is_inside in order:
                r = bound()
                if is_inside:
                    if dp - r <= node.radius + PRUNE_MARGIN:
                        visit(child)
                elif dp + r >= node.radius - PRUNE_MARGIN:
                    visit(child)

        visit(self.root)
        out = sorted((-d, -i) for d, i in heap)
        return [(i, d) for d, i in out], len(cache)

    def stats(
        self,
        queries,
        *,
        radius: float | None = None,
        k: int | None = None,
    ) -> PruningStats:
        """Run a query batch and report distance evaluations per query."""
        if (radius is None) == (k is None):
            raise ValueError("provide exactly one of radius= or k=")
        counts = []
        for q in queries:
            if radius is not None:
                _, evals = self._range(q, radius)
            else:
                _, evals = self._knn(q, k)
            counts.append(evals)
        return PruningStats(len(self.corpus), tuple(counts))

    def validate(self) -> None:
        """Sweep every node and fail loudly on any structural breach."""
        seen: list[int] = []

        def leaves(node: _Node) -> list[int]:
            if isinstance(node, _Leaf):
                return list(node.indices)
            return leaves(node.inside) + leaves(node.outside)

        def walk(node: _Node) -> None:
            if isinstance(node, _Leaf):
                seen.extend(node.indices)
                return
            pivot = self.corpus[node.pivot]
            for i in leaves(node.inside):
                d = distance(pivot, self.corpus[i], table=self.table, engine=self.engine)
                if d > node.radius:
                    raise ValueError(
                        f"inside element {i} at distance {d} exceeds radius "
                        f"{node.radius}"
                    )
            for i in leaves(node.outside):
                d = distance(pivot, self.corpus[i], table=self.table, engine=self.engine)
                if d < node.radius:
                    raise ValueError(
                        f"outside element {i} at distance {d} undercuts radius "
                        f"{node.radius}"
                    )
            walk(node.inside)
            walk(node.outside)

        walk(self.root)
        if sorted(seen) != list(range(len(self.corpus))):
            raise ValueError("corpus elements are not partitioned across leaves")

    # ------------------------------------------------------------------
    # serialization

    def save(self, path) -> None:
        nodes: list[_Node] = []

        def flatten(node: _Node) -> int:
            idx = len(nodes)
            nodes.append(node)
            if isinstance(node, _Inner):
                inside = flatten(node.inside)
                outside = flatten(node.outside)
                nodes[idx] = (node, inside, outside)  # type: ignore[assignment]
            return idx

        flatten(self.root)
        chunks = [
            MAGIC,
            struct.pack(
                "<HQQQ",
                FORMAT_VERSION,
                self.build_seed,
                len(self.corpus),
                len(nodes),
            ),
        ]
        for entry in nodes:
            if isinstance(entry, _Leaf):
                chunks.append(struct.pack("<BI", 0, len(entry.indices)))
                chunks.append(struct.pack(f"<{len(entry.indices)}I", *entry.indices))
            else:
                node, inside, outside = entry
                chunks.append(
                    struct.pack("<BIdQQ", 1, node.pivot, node.radius, inside, outside)
                )
        Path(path).write_bytes(b"".join(chunks))

    @classmethod
    def load(
        cls,
        path,
        corpus,
        *,
        table: HarmonicTable | None = None,
        engine: Engine = "auto",
    ) -> "VpTree":
        """Load a saved tree and bind it to the corpus it was built from.

        Rejects wrong magic, unsupported versions, corpus size mismatches,
        and malformed node arrays.
        """
        corpus = tuple(corpus)
        data = Path(path).read_bytes()
        if data[:4] != MAGIC:
            raise IndexFormatError("not a harmdist index file (bad magic)")
        try:
            version, seed, corpus_size, node_count = struct.unpack_from(
                "<HQQQ", data, 4
            )
        except struct.error as exc:
            raise IndexFormatError("truncated index header") from exc
        if version != FORMAT_VERSION:
            raise IndexFormatError(
                f"unsupported index version {version}; expected {FORMAT_VERSION}"
            )
        if corpus_size != len(corpus):
            raise IndexFormatError(
                f"index was built over {corpus_size} strings, corpus has "
                f"{len(corpus)}"
            )
        offset = 4 + struct.calcsize("<HQQQ")
        records = []
        try:
            for _ in range(node_count):
                (kind,) = struct.unpack_from("<B", data, offset)
                offset += 1
                if kind == 0:
                    (count,) = struct.unpack_from("<I", data, offset)
                    offset += 4
                    indices = struct.unpack_from(f"<{count}I", data, offset)
                    offset += 4 * count
                    records.append(("leaf", indices))
                elif kind == 1:
                    pivot, radius, inside, outside = struct.unpack_from(
                        "<IdQQ", data, offset
                    )
                    offset += struct.calcsize("<IdQQ")
                    records.append(("inner", pivot, radius, inside, outside))
                else:
                    raise IndexFormatError(f"unknown node kind {kind}")
        except struct.error as exc:
            raise IndexFormatError("truncated node array") from exc
        if offset != len(data):
            raise IndexFormatError("trailing bytes after node array")

        def resolve(idx: int, depth: int) -> _Node:
            if not 0 <= idx < len(records):
                raise IndexFormatError(f"child offset {idx} out of range")
            if depth > len(records):
                raise IndexFormatError("node links form a cycle")
            rec = records[idx]
            if rec[0] == "leaf":
                return _Leaf(tuple(rec[1]))
            _, pivot, radius, inside, outside = rec
            return _Inner(
                pivot, radius, resolve(inside, depth + 1), resolve(outside, depth + 1)
            )

        if not records:
            raise IndexFormatError("index contains no nodes")
        root = resolve(0, 0)
        if table is None:
            table = default_table()
        return cls(corpus, root, seed, table, engine)
