"""Command-line frontend.

Subcommands: ``dist`` (one pair), ``matrix`` (pairwise TSV over a file),
``knn`` (nearest neighbours via the vantage-point index), ``check`` (the
metric-axiom and lemma verification suites).

Exit codes: 0 success, 1 usage or infeasible request, 2 I/O or encoding
failure, 3 verification found violations.

Tokenization modes: ``codepoints`` (default, one symbol per Unicode
scalar), ``bytes`` (one symbol per byte, accepts arbitrary data),
``words`` (whitespace-separated).  Output uses fixed-precision decimals
so results diff cleanly across runs and platforms.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CapacityError, IndexFormatError
from .harmonic import default_table
from .lcs import ENGINES, Interner, SymbolSeq
from .metric import distance
from .propcheck import (
    FIXTURES,
    GenConfig,
    all_pairs,
    random_chains,
    random_pairs,
    shrink,
    universe,
    verify_lemma_chain,
    verify_lemma_lcs_triangle,
    verify_lemma_scs,
    verify_metric_axioms,
)
from .vpindex import VpTree

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VIOLATIONS = 3


class _Parser(argparse.ArgumentParser):
    # usage errors are exit code 1 in this tool, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _check_text(text: str) -> str:
    # invalid UTF-8 in argv arrives as lone surrogates (surrogateescape)
    if any(0xD800 <= ord(ch) <= 0xDFFF for ch in text):
        raise CliError("argument is not valid UTF-8", EXIT_IO)
    return text


def _tokens(text: str, mode: str):
    if mode == "bytes":
        return text.encode("utf-8", "surrogateescape")
    if mode == "codepoints":
        return _check_text(text)
    return _check_text(text).split()


def _read_lines(path: str, mode: str) -> list[str] | list[bytes]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    if mode == "bytes":
        lines = data.split(b"\n")
    else:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CliError(f"{path} is not valid UTF-8: {exc}", EXIT_IO) from exc
        lines = text.split("\n")
    if lines and not lines[-1]:
        lines.pop()  # trailing newline is optional
    return lines


def _line_seq(line, mode: str, interner: Interner) -> SymbolSeq:
    if mode == "bytes":
        return interner.seq(line)
    if mode == "codepoints":
        return interner.seq(line)
    return interner.seq(line.split())


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _seq_label(seq: SymbolSeq) -> str:
    if all(i < 26 for i in seq.ids):
        return "".join(chr(ord("a") + i) for i in seq.ids)
    return ".".join(str(i) for i in seq.ids)


# ---------------------------------------------------------------------------
# subcommands


def cmd_dist(args) -> int:
    interner = Interner()
    a = interner.seq(_tokens(args.a, args.mode))
    b = interner.seq(_tokens(args.b, args.mode))
    print(_fmt(distance(a, b, engine=args.engine), args.precision))
    return EXIT_OK


def cmd_matrix(args) -> int:
    lines = _read_lines(args.input, args.mode)
    interner = Interner()
    seqs = [_line_seq(line, args.mode, interner) for line in lines]
    n = len(seqs)
    out = sys.stdout
    out.write("\t".join(str(i) for i in range(n)) + "\n")
    cells = [[None] * n for _ in range(n)]
    for i in range(n):
        cells[i][i] = _fmt(0.0, args.precision)
        for j in range(i + 1, n):
            value = _fmt(distance(seqs[i], seqs[j], engine=args.engine), args.precision)
            cells[i][j] = cells[j][i] = value
    for row in cells:
        out.write("\t".join(row) + "\n")
    return EXIT_OK


def cmd_knn(args) -> int:
    lines = _read_lines(args.corpus, args.mode)
    if not lines:
        raise CliError("corpus is empty", EXIT_USAGE)
    interner = Interner()
    seqs = [_line_seq(line, args.mode, interner) for line in lines]
    query = interner.seq(_tokens(args.query, args.mode))
    seed = args.seed if args.seed is not None else 0

    if args.no_index:
        ranked = sorted(
            (distance(query, s, engine=args.engine), i) for i, s in enumerate(seqs)
        )
        results = [(i, d) for d, i in ranked[: args.k]]
    else:
        tree = None
        if args.index and Path(args.index).exists():
            tree = VpTree.load(args.index, seqs, engine=args.engine)
        if tree is None:
            tree = VpTree.build(seqs, seed, engine=args.engine)
            if args.index:
                tree.save(args.index)
        results = tree.knn(query, args.k)

    for rank, (idx, d) in enumerate(results, start=1):
        line = lines[idx]
        text = line.decode("utf-8", "backslashreplace") if isinstance(line, bytes) else line
        print(f"{rank}\t{idx}\t{_fmt(d, args.precision)}\t{text}")
    return EXIT_OK


def cmd_check(args) -> int:
    rational = not args.use_float
    seed = args.seed if args.seed is not None else 0
    mode = "exhaustive" if args.exhaustive else "random"
    config = GenConfig(
        alphabet_size=args.alphabet,
        max_length=args.maxlen,
        sample_count=args.samples,
        seed=seed,
        mode=mode,
    )
    table = default_table()
    dist = None
    if args.fixture:
        dist = FIXTURES[args.fixture](rational=rational, table=table)

    reports = [
        verify_metric_axioms(config, rational=rational, dist=dist, table=table)
    ]
    if mode == "exhaustive":
        strings = universe(config.alphabet_size, config.max_length)
        reports.append(
            verify_lemma_scs(all_pairs(strings), rational=rational, table=table)
        )
        reports.append(
            verify_lemma_lcs_triangle(
                all_pairs(strings), rational=rational, table=table
            )
        )
    else:
        reports.append(
            verify_lemma_scs(
                random_pairs(config), rational=rational, table=table, seed=seed
            )
        )
        reports.append(
            verify_lemma_lcs_triangle(
                random_pairs(config), rational=rational, table=table, seed=seed
            )
        )
    reports.append(
        verify_lemma_chain(
            random_chains(config), rational=rational, table=table, seed=seed
        )
    )

    properties = [p for rep in reports for p in rep.properties]
    if args.json:
        payload = {
            "properties": [
                entry for rep in reports for entry in rep.as_dict()["properties"]
            ],
            "total_violations": sum(p.violations for p in properties),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for rep in reports:
            print(rep.as_text())

    violations = sum(p.violations for p in properties)
    if violations == 0:
        return EXIT_OK
    for prop in properties:
        if not prop.counterexamples:
            continue
        cx = shrink(prop.counterexamples[0])
        a, b, c = (_seq_label(s) for s in cx.triple)
        print(
            f"counterexample property={cx.property} slack={cx.slack:.12e} "
            f"a='{a}' b='{b}' c='{c}'"
        )
    return EXIT_VIOLATIONS


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--mode",
        choices=("bytes", "codepoints", "words"),
        default="codepoints",
        help="tokenization mode (default: codepoints)",
    )
    common.add_argument(
        "--precision",
        type=int,
        default=12,
        metavar="N",
        help="decimal places in printed distances (1..17, default 12)",
    )
    common.add_argument(
        "--engine",
        choices=ENGINES,
        default="auto",
        help="LCS engine (default: auto)",
    )
    common.add_argument("--seed", type=int, default=None, metavar="U64")

    parser = _Parser(prog="harmdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="distance between two strings")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser(
        "matrix", parents=[common], help="pairwise distance matrix of a line file"
    )
    p.add_argument("input", help="newline-delimited corpus file")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser(
        "knn", parents=[common], help="k nearest corpus lines to a query"
    )
    p.add_argument("corpus", help="newline-delimited corpus file")
    p.add_argument("query")
    p.add_argument("--k", type=int, default=10)
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--index", metavar="PATH", help="load the index from PATH, building it first if missing"
    )
    group.add_argument(
        "--no-index", action="store_true", help="linear scan instead of the index"
    )
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser(
        "check", parents=[common], help="verify the metric axioms and lemmas"
    )
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--exhaustive", action="store_true")
    kind.add_argument("--random", action="store_true")
    p.add_argument("--alphabet", type=int, default=2, metavar="K")
    p.add_argument("--maxlen", type=int, default=4, metavar="L")
    p.add_argument("--samples", type=int, default=1000, metavar="N")
    tier = p.add_mutually_exclusive_group()
    tier.add_argument("--rational", action="store_true", default=True)
    tier.add_argument(
        "--float", dest="use_float", action="store_true", help="tolerant float tier"
    )
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    p.add_argument("--fixture", choices=sorted(FIXTURES), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    return parser


def _validate(args, parser: argparse.ArgumentParser) -> None:
    if not 1 <= args.precision <= 17:
        parser.error("--precision must be between 1 and 17")
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must fit in 64 unsigned bits")
    if getattr(args, "k", 1) < 1:
        parser.error("--k must be positive")
    if getattr(args, "samples", 0) < 0:
        parser.error("--samples must be nonnegative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"harmdist: {exc}", file=sys.stderr)
        return exc.code
    except IndexFormatError as exc:
        print(f"harmdist: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapacityError as exc:
        print(f"harmdist: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"harmdist: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
