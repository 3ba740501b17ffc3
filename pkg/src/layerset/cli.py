"""Command-line interface: eval, raster, primes, bench, check.

Exit codes: 0 success, 1 check or agreement failure, 2 usage/parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bench as bench_mod
from . import checks, kernels, numtheory, raster, setlang
from .indicator import NATURALS, PLANE
from .setlang import BACKENDS, TOMOGRAPHY, SetlError

PRIMES_CAP = 10 ** 6


def _read_program(path: str) -> setlang.Program:
    source = Path(path).read_text(encoding="utf-8")
    return setlang.parse(source)


def _parse_probe(text: str, universe_kind: str):
    if universe_kind == PLANE:
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"plane probes look like 'x,y', got {text!r}")
        x, y = (Fraction(p.strip()) for p in parts)
        return (x, y), f"({x}, {y})"
    if universe_kind == NATURALS:
        value = int(text)
        if value < 0:
            raise ValueError(f"naturals probes must be >= 0, got {value}")
        return value, str(value)
    value = Fraction(text)
    return value, str(value)


def cmd_eval(args) -> int:
    program = _read_program(args.program)
    compiled = setlang.compile_program(program, args.backend)
    if not compiled:
        print("program declares no queries", file=sys.stderr)
        return 2
    probes = [_parse_probe(p, program.universe_kind) for p in args.probes]
    for query in compiled:
        for value, text in probes:
            print(f"{query.pretty} @ {text} = {query.evaluate(value)}")
    return 0


def _parse_region(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"region must be 'xmin,ymin,xmax,ymax', got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def _parse_size(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"size must be 'WIDTHxHEIGHT', got {text!r}")
    width, height = (int(p) for p in parts)
    return width, height


def _select_query(args, program: setlang.Program):
    if args.query is None:
        if len(program.queries) == 1:
            return program.queries[0]
        raise ValueError(
            f"program has {len(program.queries)} queries; pick one with --query (text or 1-based index)")
    text = args.query.strip()
    if text.isdigit():
        idx = int(text)
        if not 1 <= idx <= len(program.queries):
            raise ValueError(f"query index {idx} out of range 1..{len(program.queries)}")
        return program.queries[idx - 1]
    return setlang.parse_query(text, program)


def cmd_raster(args) -> int:
    program = _read_program(args.program)
    query = _select_query(args, program)
    x_min, y_min, x_max, y_max = _parse_region(args.region)
    width, height = _parse_size(args.size)
    grid = raster.GridSpec(x_min, y_min, x_max, y_max, width, height)
    values, maxval = raster.query_grid(query, program, grid, args.backend)
    if args.format == "csv":
        raster.write_csv(args.out, values)
    else:
        raster.write_pgm(args.out, values, maxval, binary=args.binary)
    print(f"wrote {args.format} grid {width}x{height} (maxval {max(1, maxval)}) to {args.out}")
    return 0


def cmd_primes(args) -> int:
    if not 2 <= args.n <= PRIMES_CAP:
        print(f"N must lie in [2, {PRIMES_CAP}], got {args.n}", file=sys.stderr)
        return 2
    formula = numtheory.prime_count(args.n)
    sieve = numtheory.sieve_prime_count(args.n)
    match = formula == sieve
    print(f"pi({args.n}) by B-function formula: {formula}")
    print(f"pi({args.n}) by sieve oracle:      {sieve}")
    print("match" if match else "MISMATCH")
    return 0 if match else 1


def cmd_bench(args) -> int:
    rows = bench_mod.run_bench(args.n_max, args.probes, args.seed, args.repeats)
    print(f"kernel backend: {kernels.ACTIVE_BACKEND}")
    print(bench_mod.format_table(rows))
    bench_mod.write_csv(args.out, rows)
    print(f"wrote {args.out}")
    if not all(r.agree for r in rows):
        print("backends disagree!", file=sys.stderr)
        return 1
    return 0


def cmd_check(args) -> int:
    results = checks.run_all(seed=args.seed)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    total = sum(r.cases for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} suites passed ({total} cases)")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layerset",
        description="Exact indicator calculus: n-term layer tomography vs the 2^n-1 term oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate every query of a program at probe points")
    p_eval.add_argument("program", help="path to a .setl program")
    p_eval.add_argument("probes", nargs="+", help="probe points: 'x,y' on the plane, a number otherwise")
    p_eval.add_argument("--backend", choices=BACKENDS, default=TOMOGRAPHY)
    p_eval.set_defaults(func=cmd_eval)

    p_raster = sub.add_parser("raster", help="rasterize a plane query to a PGM or CSV grid")
    p_raster.add_argument("program")
    p_raster.add_argument("--query", default=None,
                          help="query text (e.g. 'exactly(4)') or 1-based index into the program's queries")
    p_raster.add_argument("--region", default="-3.75,-3.75,3,3", help="xmin,ymin,xmax,ymax")
    p_raster.add_argument("--size", default="600x600", help="WIDTHxHEIGHT samples")
    p_raster.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    p_raster.add_argument("--binary", action="store_true", help="write binary P5 instead of ASCII P2")
    p_raster.add_argument("--backend", choices=BACKENDS, default=TOMOGRAPHY)
    p_raster.add_argument("--out", required=True, help="output file path")
    p_raster.set_defaults(func=cmd_raster)

    p_primes = sub.add_parser("primes", help="count primes <= N by the formula and by a sieve")
    p_primes.add_argument("n", type=int)
    p_primes.set_defaults(func=cmd_primes)

    p_bench = sub.add_parser("bench", help="compare n-term vs 2^n-1 term union evaluation")
    p_bench.add_argument("--n-max", type=int, default=16, dest="n_max")
    p_bench.add_argument("--probes", type=int, default=64, help="probe points per n")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--repeats", type=int, default=3, help="timing repeats (minimum taken)")
    p_bench.add_argument("--out", default="bench.csv", help="CSV report path")
    p_bench.set_defaults(func=cmd_bench)

    p_check = sub.add_parser("check", help="run the built-in identity suites")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SetlError as exc:
        program = getattr(args, "program", None)
        prefix = f"{program}: " if program else ""
        print(f"{prefix}error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
