"""Command-line interface: solve, oracle, bench, validate."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import grid, run_grid, to_csv
from .generators import hull_size_instance, uniform_instance
from .instance import (
    InstanceError,
    PolygonError,
    area_from_twice,
    parse_instance,
    parse_solution,
    render_svg,
    validate_polygonization,
    write_solution,
)
from .oracle import DEFAULT_MAX_N, OracleRefused, oracle_summary
from .solver import DEFAULT_TIME_LIMIT, PRESETS, solve

EXIT_OK = 0
EXIT_LIMIT = 2
EXIT_FAIL = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_instance(path: str):
    return parse_instance(Path(path).read_text())


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.start in ("greedy", "none"):
        start = args.start
    else:
        start = parse_solution(Path(args.start).read_text()).order
    out = solve(inst, args.objective, args.preset, start=start, time_limit=args.time_limit)
    rec = out.record
    print(f"status={rec.status} preset={out.preset} nodes={out.stats.get('nodes', 0)}")
    if rec.twice_area is None:
        print("no polygonization found")
        return EXIT_FAIL
    print(f"twice_area={rec.twice_area} area={area_from_twice(rec.twice_area)} bound={rec.bound} gap={rec.gap:.3g}")
    print("order=" + " ".join(map(str, rec.order)))
    if args.out:
        Path(args.out).write_text(write_solution(rec) + "\n")
    if args.svg:
        Path(args.svg).write_text(render_svg(inst, out.polygon))
    if rec.status == "optimal":
        return EXIT_OK
    return EXIT_LIMIT


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    try:
        s = oracle_summary(inst, max_n=args.max_n)
    except OracleRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"count={s['count']}")
    print(f"min={s['min']} order={' '.join(map(str, s['min_order']))}")
    print(f"max={s['max']} order={' '.join(map(str, s['max_order']))}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.instances:
        instances = [_load_instance(p) for p in args.instances]
    else:
        instances = []
        for c in range(args.count):
            seed = args.seed * 1_000_003 + c
            if args.hull_k is not None:
                instances.append(hull_size_instance(args.n, args.hull_k, seed))
            else:
                instances.append(uniform_instance(args.n, seed))
    presets = [p.strip() for p in args.presets.split(",") if p.strip()]
    unknown = [p for p in presets if p not in PRESETS]
    if unknown:
        print(f"unknown preset(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    objectives = [o.strip() for o in args.objectives.split(",")]
    cells = grid(instances, presets, objectives, args.repetitions, args.time_limit)
    text = to_csv(run_grid(cells, args.workers))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = _load_instance(args.instance)
    try:
        rec = parse_solution(Path(args.solution).read_text())
    except (ValueError, KeyError) as exc:
        print(f"bad solution file: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if rec.instance != inst.name:
        print(f"warning: solution names instance {rec.instance!r}, file holds {inst.name!r}", file=sys.stderr)
    try:
        poly = validate_polygonization(inst, rec.order)
    except PolygonError as exc:
        print(f"INVALID {exc.code}: {exc}")
        return EXIT_FAIL
    if rec.twice_area != poly.twice_area:
        print(f"INVALID twice_area: recorded {rec.twice_area}, recomputed {poly.twice_area}")
        return EXIT_FAIL
    print(f"OK twice_area={poly.twice_area}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polyarea", description="Exact Min-/Max-Area polygonization by branch-and-cut.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--objective", choices=("min", "max"), required=True)
    p.add_argument("--preset", choices=PRESETS, default=None, help="default: edge-v3 for both objectives")
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    p.add_argument("--start", default="greedy", help="greedy, none, or a solution file to warm start from")
    p.add_argument("--out", help="write the solution record here")
    p.add_argument("--svg", help="write an SVG drawing here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force all polygonizations of a small instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run a benchmark grid and write CSV")
    p.add_argument("--instances", nargs="*", help="instance files (default: random instances)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--hull-k", type=int, default=None, help="points on the convex hull (default: uniform)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--presets", default="edge-v2,tri-v1")
    p.add_argument("--objectives", default="min,max")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    p.add_argument("--workers", type=int, default=None, help="capped by POLYAREA_THREADS")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="check a solution file against its instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
