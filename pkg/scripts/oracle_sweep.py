"""Cross-check every preset against brute-force enumeration on small random instances.

    python3 scripts/oracle_sweep.py --count 50 --max-n 8
"""
import argparse
import random

from polyarea.generators import uniform_instance
from polyarea.oracle import oracle_optimum
from polyarea.solver import PRESETS, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for k in range(args.count):
        inst = uniform_instance(rng.randint(args.min_n, args.max_n), seed=args.seed * 100_000 + k)
        for obj in ("min", "max"):
            want, _ = oracle_optimum(inst, obj)
            for p in PRESETS:
                got = solve(inst, obj, p).record.twice_area
                if got != want:
                    bad += 1
                    print(f"MISMATCH {inst.name} n={inst.n} {obj} {p}: {got} != {want}", flush=True)
    print(f"{args.count} instances, {bad} mismatches")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
