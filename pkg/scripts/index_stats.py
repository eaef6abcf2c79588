#!/usr/bin/env python3
"""Measure how much of the corpus the vantage-point index actually scans.

Builds a seeded random corpus, runs range and knn query batches, and
reports per-batch scanned fractions next to the linear-scan baseline.
"""

from __future__ import annotations

import argparse
import random

from harmdist import SymbolSeq, VpTree


def random_seq(rng: random.Random, alphabet: int, max_length: int) -> SymbolSeq:
    return SymbolSeq(
        tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, max_length)))
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus-size", type=int, default=2000)
    parser.add_argument("--queries", type=int, default=50)
    parser.add_argument("--alphabet", type=int, default=4)
    parser.add_argument("--max-length", type=int, default=64)
    parser.add_argument("--radius", type=float, default=0.3)
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    corpus = [random_seq(rng, args.alphabet, args.max_length)
              for _ in range(args.corpus_size)]
    queries = [random_seq(rng, args.alphabet, args.max_length)
               for _ in range(args.queries)]

    tree = VpTree.build(corpus, args.seed)
    for label, kwargs in (
        (f"range r={args.radius}", {"radius": args.radius}),
        (f"knn k={args.k}", {"k": args.k}),
    ):
        stats = tree.stats(queries, **kwargs)
        evals = stats.evaluations
        print(
            f"{label}: mean scanned fraction "
            f"{stats.mean_fraction_scanned:.4f} "
            f"(evals min={min(evals)} median={sorted(evals)[len(evals)//2]} "
            f"max={max(evals)}; linear scan = {args.corpus_size})"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
