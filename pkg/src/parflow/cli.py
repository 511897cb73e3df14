"""``parbench``: run the benchmarks and inspect recorded traces."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .backends import DistConf, PoolConf, make_backend
from .bench.harness import calibrate_spin, format_table, measure, spin_spec, write_csv
from .bench.rabin_miller import DEFAULT_EXPONENT
from .bench.specs import matmul_spec, rabin_miller_spec, sudoku_spec
from .bench.sudoku import generate_puzzles, load_puzzles
from .errors import ParflowError, VerificationMismatch
from .trace import load_jsonl, stats

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


def _backend(args):
    if args.backend == "seq":
        return make_backend(None)
    if args.backend == "pool":
        return make_backend(PoolConf(workers=args.workers))
    return make_backend(DistConf(workers=args.workers, record_trace=bool(args.trace)))


def _common(p):
    p.add_argument("--backend", choices=["seq", "pool", "simdist"], default="pool")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--csv", metavar="PATH", help="write reports as CSV")
    p.add_argument("--trace", metavar="PATH", help="write the SimDist message trace as JSONL")
    p.add_argument("--no-overhead", action="store_true", help="skip the direct-dispatch comparison")


def build_parser():
    parser = argparse.ArgumentParser(prog="parbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rabin-miller", help="strong probable prime test of 2**exp - 1")
    p.add_argument("--exp", type=int, default=DEFAULT_EXPONENT)
    p.add_argument("--bases", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("matmul", help="Gentleman torus matrix multiplication")
    p.add_argument("--dim", type=int, default=256)
    p.add_argument("--cores", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("sudoku", help="solve a batch of puzzles")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", metavar="PATH", help="one 81-char puzzle per line, '.' or '0' for blanks")
    src.add_argument("--generate", type=int, metavar="N", help="solve N generated puzzles")
    p.add_argument("--blanks", type=int, default=55)
    p.add_argument("--seed", type=int, default=0)
    _common(p)

    p = sub.add_parser("overhead", help="par_map against direct dispatch of synthetic tasks")
    p.add_argument("--tasks", type=int, default=16)
    p.add_argument("--task-ms", type=float, default=10.0)
    _common(p)

    p = sub.add_parser("trace-stats", help="summarise a JSONL trace")
    p.add_argument("--in", dest="path", required=True, metavar="PATH")
    p.add_argument("--tag", help="only count messages with this tag")
    return parser


def _spec(args):
    if args.command == "rabin-miller":
        return rabin_miller_spec(args.exp, args.bases, args.seed)
    if args.command == "matmul":
        return matmul_spec(args.dim, args.cores, args.seed)
    if args.command == "sudoku":
        puzzles = load_puzzles(args.file) if args.file else generate_puzzles(args.generate, args.blanks, args.seed)
        return sudoku_spec(puzzles)
    return spin_spec(args.tasks, calibrate_spin(args.task_ms / 1000.0))


def _trace_stats(args):
    s = stats(load_jsonl(args.path), tag=args.tag)
    print(json.dumps(s.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _run(args):
    spec = _spec(args)
    backend = _backend(args)
    code = EXIT_OK
    try:
        try:
            reports = measure(spec, [backend], args.reps, with_overhead=not args.no_overhead)
        except VerificationMismatch as exc:
            print(f"verification failed: {exc}", file=sys.stderr)
            reports, code = exc.reports, EXIT_MISMATCH
        print(format_table(reports))
        if args.csv:
            write_csv(reports, args.csv)
        if args.trace:
            if backend.trace is None or not backend.trace.enabled:
                print("note: only the simdist backend records traces", file=sys.stderr)
            else:
                backend.trace.export_jsonl(args.trace)
    finally:
        backend.close()
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "trace-stats":
            return _trace_stats(args)
        return _run(args)
    except (ParflowError, ValueError, OSError) as exc:
        print(f"parbench: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
