"""Command-line entry point.

System files look like::

    q=101
    vars: x, y
    y^2 - x^3 - x

with one polynomial per line after the two header lines. ``#`` starts a
comment.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .elim import MAX_K, Kind, PolySystem, classify_intersection
from .errors import (
    BudgetExhausted,
    ConfigError,
    DimensionMismatch,
    EliminationBudgetExceeded,
    EmptySample,
    ParseError,
    SplitStall,
    TooLarge,
    TooManyPolys,
    VarSampleError,
)
from .field import Field, RandomSource
from .geometry import count_affine_subspaces, count_linear_subspaces
from .poly import format_poly, parse_poly
from .sampler import SamplerParams, sample_variety
from .verify import enumerate_variety, estimate_proper_fraction, verify_distance, wilson_interval

EXIT_OK, EXIT_ERROR, EXIT_CONFIG, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3, 4

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_system(text: str) -> PolySystem:
    q = names = None
    field = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        col = line.index(stripped[0]) + 1
        if q is None and re.match(r"q\s*=", stripped):
            m = re.fullmatch(r"q\s*=\s*(\d+)", stripped)
            if m is None:
                raise ParseError("expected 'q=<prime>'", lineno, col)
            q = int(m.group(1))
            field = Field(q)
            continue
        if names is None and stripped.startswith("vars"):
            m = re.fullmatch(r"vars\s*:\s*(.*)", stripped)
            if m is None:
                raise ParseError("expected 'vars: <names>'", lineno, col)
            names = [v.strip() for v in m.group(1).split(",")]
            for v in names:
                if not _NAME.match(v):
                    raise ParseError(f"bad variable name {v!r}", lineno, col)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, col)
            continue
        if field is None or names is None:
            raise ParseError("the 'q=' and 'vars:' headers must precede the polynomials", lineno, col)
        polys.append(parse_poly(line, names, field, line=lineno))
    if field is None:
        raise ParseError("missing 'q=<prime>' header")
    if names is None:
        raise ParseError("missing 'vars:' header")
    if not polys:
        raise ParseError("no polynomials given")
    if len(polys) > MAX_K:
        raise TooManyPolys(f"{len(polys)} polynomials exceeds the cap of {MAX_K}")
    return PolySystem(field, len(names), polys, names=names)


def format_system(system: PolySystem) -> str:
    names = system.var_names
    lines = [f"q={system.field.p}", "vars: " + ", ".join(names)]
    lines += [format_poly(f, names) for f in system.polys]
    return "\n".join(lines) + "\n"


def _load(path: str) -> PolySystem:
    with open(path) as fh:
        return parse_system(fh.read())


def _fmt_point(pt) -> str:
    return ",".join(str(x) for x in pt)


def cmd_sample(args) -> int:
    system = _load(args.system)
    params = SamplerParams(args.epsilon, max_wall_budget=args.max_wall_budget)
    points, reports = sample_variety(system, params, args.count, RandomSource(args.seed))
    for pt in points:
        if not system.is_solution(pt):
            raise RuntimeError(f"refusing to emit off-variety point {pt}")
    if args.json:
        out = {
            "q": system.field.p,
            "vars": list(system.var_names),
            "points": [list(pt) for pt in points],
            "report": {
                "fallbacks": sum(r.fell_back for r in reports),
                "rsamp_failures": sum(r.rsamp_failures for r in reports),
                "iterations": sum(r.iterations_used for r in reports),
            },
        }
        print(json.dumps(out))
    else:
        for pt in points:
            print(_fmt_point(pt))
    return EXIT_OK


def cmd_solve(args) -> int:
    system = _load(args.system)
    if system.num_vars != system.k:
        raise DimensionMismatch(f"solve needs as many polynomials as variables, got {system.k} and {system.num_vars}")
    result = classify_intersection(system, RandomSource(args.seed))
    print(result.kind.value)
    for pt in result.points:
        print(_fmt_point(pt))
    return EXIT_OK


def cmd_count(args) -> int:
    print(len(enumerate_variety(_load(args.system))))
    return EXIT_OK


def cmd_subspaces(args) -> int:
    Field(args.q)
    lin = count_linear_subspaces(args.n, args.k, args.q)
    aff = count_affine_subspaces(args.n, args.k, args.q)
    print(f"linear: {lin}, affine: {aff}")
    return EXIT_OK


def cmd_verify_distance(args) -> int:
    system = _load(args.system)
    params = SamplerParams(args.epsilon)
    report = verify_distance(system, params, args.samples, RandomSource(args.seed))
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_estimate_proper(args) -> int:
    system = _load(args.system)
    frac = estimate_proper_fraction(system, args.trials, RandomSource(args.seed))
    hits = int(frac * args.trials)
    lo, hi = wilson_interval(hits, args.trials, args.confidence)
    if args.json:
        print(json.dumps({"trials": args.trials, "proper": hits, "fraction": float(frac), "wilson": [lo, hi]}))
    else:
        print(f"fraction: {float(frac):.6f} ({hits}/{args.trials}), wilson {args.confidence:.0%}: [{lo:.6f}, {hi:.6f}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varsample", description="Sample points on affine varieties over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw almost-uniform points of V")
    p.add_argument("--system", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-wall-budget", type=int, default=100_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("solve", help="classify and solve a square system")
    p.add_argument("--system", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="brute-force |V|")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("subspaces", help="count k-dimensional subspaces of F_q^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_subspaces)

    p = sub.add_parser("verify-distance", help="empirical distance to uniform on V against 6/q^(1-eps)")
    p.add_argument("--system", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_distance)

    p = sub.add_parser("estimate-proper", help="fraction of k-subspaces meeting V properly")
    p.add_argument("--system", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_estimate_proper)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VarSampleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _exit_code(exc: VarSampleError) -> int:
    if isinstance(exc, (ConfigError, DimensionMismatch, TooLarge)):
        return EXIT_CONFIG
    if isinstance(exc, (BudgetExhausted, EliminationBudgetExceeded, SplitStall, EmptySample)):
        return EXIT_BUDGET
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
