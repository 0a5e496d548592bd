"""Solve time and node count as the number of hull points varies at fixed n.

Writes CSV (bench columns plus hull_k) to stdout.

    python3 scripts/hull_size_study.py --n 10 --count 3 --preset edge-v3
"""
import argparse
import csv
import sys

from polyarea.bench import COLUMNS, grid, run_grid
from polyarea.generators import hull_size_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--count", type=int, default=3, help="instances per hull size")
    ap.add_argument("--preset", default="edge-v3")
    ap.add_argument("--time-limit", type=float, default=300.0)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    w = csv.DictWriter(sys.stdout, fieldnames=["hull_k", *COLUMNS], lineterminator="\n")
    w.writeheader()
    for k in range(3, args.n + 1):
        insts = [hull_size_instance(args.n, k, seed=1000 * k + s) for s in range(args.count)]
        for row in run_grid(grid(insts, [args.preset], time_limit=args.time_limit), args.workers):
            w.writerow({"hull_k": k, **row})
        sys.stdout.flush()


if __name__ == "__main__":
    main()
