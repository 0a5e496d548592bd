"""Time each preset on uniform random instances and print one line per instance.

    python3 scripts/compare_presets.py --n 12 --seeds 0 5 --objective min
"""
import argparse
import time

from polyarea.generators import uniform_instance
from polyarea.solver import PRESETS, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--seeds", type=int, nargs=2, default=(0, 5), metavar=("FIRST", "STOP"))
    ap.add_argument("--objective", choices=("min", "max"), default="min")
    ap.add_argument("--presets", default="edge-v2,edge-v3,edge-v4,tri-v1")
    ap.add_argument("--time-limit", type=float, default=300.0)
    args = ap.parse_args()
    presets = args.presets.split(",")
    for p in presets:
        if p not in PRESETS:
            ap.error(f"unknown preset {p}")
    print("seed objective " + " ".join(presets))
    for seed in range(*args.seeds):
        inst = uniform_instance(args.n, seed)
        cells = []
        for p in presets:
            t0 = time.perf_counter()
            out = solve(inst, args.objective, p, time_limit=args.time_limit)
            dt = time.perf_counter() - t0
            cells.append(f"{out.record.status}:{out.record.twice_area}:{dt:.1f}s:{out.stats.get('nodes', 0)}n")
        print(seed, args.objective, *cells, flush=True)


if __name__ == "__main__":
    main()
