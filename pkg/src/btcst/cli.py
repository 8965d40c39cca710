"""Command line front end: build, query, space, maxsub, gen."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize
from .bench import OPS, run_queries
from .corpus import gen_bytes
from .cst import BtCst
from .maxsub import maximal_substrings
from .space import space_report
from .suffix import Text


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _arity(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"arity must be >= 2, got {value}")
    return value


def cmd_build(args) -> int:
    data = Path(args.input).read_bytes()
    if b"\0" in data:
        print(f"error: {args.input} contains a 0 byte, which is reserved as the terminator",
              file=sys.stderr)
        return 2
    cst = BtCst.build(Text.from_bytes(data), r=args.r, mll=args.m,
                      sa_rate=args.sa_sample, isa_rate=args.psi_sample)
    size = serialize.save(cst, args.output)
    print(f"wrote {args.output}: {size} bytes, n={cst.n}, nodes={cst.node_count()}")
    return 0


def cmd_query(args) -> int:
    cst = serialize.load(args.index)
    ops = OPS if args.op == "all" else [args.op]
    for op in ops:
        for line in run_queries(cst, op, args.count, args.seed).lines(args.kv):
            print(line)
    return 0


def cmd_space(args) -> int:
    for line in space_report(serialize.load(args.index)).lines(args.kv):
        print(line)
    return 0


def cmd_maxsub(args) -> int:
    cst = serialize.load(args.index)
    query = Path(args.query_file).read_bytes().rstrip(b"\n")
    for start, end, pos in maximal_substrings(cst, query):
        print(f"{start}\t{end}\t{pos}")
    return 0


def cmd_gen(args) -> int:
    data = gen_bytes(args.size, args.copies, args.rate, args.seed)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btcst", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a text file")
    p.add_argument("input")
    p.add_argument("-r", type=_arity, default=2, help="Block Tree arity (default 2)")
    p.add_argument("-m", type=_positive, default=128, help="max leaf length mll (default 128)")
    p.add_argument("--sa-sample", type=_positive, default=32, help="suffix array sampling s_A (default 32)")
    p.add_argument("--psi-sample", type=_positive, default=128,
                   help="text sampling s_T for the inverse suffix array, reached by Psi steps (default 128)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="time random queries and print a results digest")
    p.add_argument("index")
    p.add_argument("--op", default="parent", choices=list(OPS) + ["all"])
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kv", action="store_true", help="key=value output")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("space", help="space breakdown")
    p.add_argument("index")
    p.add_argument("--kv", action="store_true", help="key=value output")
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("maxsub", help="maximal substrings of a query file")
    p.add_argument("index")
    p.add_argument("--query-file", required=True)
    p.set_defaults(func=cmd_maxsub)

    p = sub.add_parser("gen", help="write a synthetic repetitive text")
    p.add_argument("--size", type=int, default=10_000)
    p.add_argument("--copies", type=_positive, default=4)
    p.add_argument("--rate", type=float, default=0.005)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
