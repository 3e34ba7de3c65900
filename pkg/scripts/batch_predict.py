"""Predict failure paths for many random configurations and summarize
how often a path exists, which zone is chosen and how long it takes.

    python3 scripts/batch_predict.py --n 200 --n-cracks 20
"""

import argparse
import collections
import statistics
import time

from fracgraph.errors import NoPathError
from fracgraph.pathfinding import predict
from fracgraph.synth import ConfigSpec, generate_network


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--n-cracks", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    args = ap.parse_args()

    zones, levels, n_paths = collections.Counter(), collections.Counter(), collections.Counter()
    times, no_path = [], 0
    for seed in range(args.first_seed, args.first_seed + args.n):
        net = generate_network(ConfigSpec(n_cracks=args.n_cracks, seed=seed))
        t0 = time.perf_counter()
        try:
            pred = predict(net)
        except NoPathError:
            no_path += 1
            continue
        finally:
            times.append(time.perf_counter() - t0)
        zones[pred.selection.zone_index] += 1
        levels[pred.selection.tie_break_level_used.value] += 1
        n_paths[len(pred.paths)] += 1
    print(f"configurations     {args.n} ({args.n_cracks} cracks each)")
    print(f"no boundary path   {no_path} ({no_path / args.n:.1%})")
    print(f"failure zone       {dict(sorted(zones.items()))}")
    print(f"decided by         {dict(levels)}")
    print(f"paths per case     {dict(sorted(n_paths.items()))}")
    print(f"predict time       median {statistics.median(times) * 1e3:.1f} ms, max {max(times) * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
