#!/usr/bin/env python3
"""Benchmark the LCS engines against each other.

Example:
    python scripts/bench_engines.py --lengths 256,1024,4096 --alphabet 4 --runs 5
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from harmdist import SymbolSeq, lcs_len_bitparallel, lcs_len_dp, lcs_len_hunt_szymanski

ENGINES = {
    "dp": lcs_len_dp,
    "bitparallel": lcs_len_bitparallel,
    "huntszymanski": lcs_len_hunt_szymanski,
}


def random_pair(rng: random.Random, length: int, alphabet: int):
    return (
        SymbolSeq(tuple(rng.randrange(alphabet) for _ in range(length))),
        SymbolSeq(tuple(rng.randrange(alphabet) for _ in range(length))),
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lengths", default="256,1024,4096")
    parser.add_argument("--alphabet", type=int, default=4)
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'length':>8} {'engine':>14} {'median_s':>12} {'vs_dp':>8}")
    for length in (int(x) for x in args.lengths.split(",")):
        a, b = random_pair(rng, length, args.alphabet)
        medians = {}
        for name, fn in ENGINES.items():
            times = []
            value = None
            for _ in range(args.runs):
                t0 = time.perf_counter()
                value = fn(a, b)
                times.append(time.perf_counter() - t0)
            medians[name] = statistics.median(times)
            ratio = medians["dp"] / medians[name]
            print(f"{length:>8} {name:>14} {medians[name]:>12.6f} {ratio:>7.1f}x"
                  f"  (lcs={value})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
