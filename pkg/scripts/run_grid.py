"""Run the full pipeline over the parameter grid and report per-stage timings.

    python3 scripts/run_grid.py [--max-d 5] [--seed 20240613] [--json out.json]
"""

import argparse
import json
import time
from collections import defaultdict
from dataclasses import replace
from functools import reduce

from leonard.awrel import aw_scalars, verify_aw
from leonard.exactmat import determinant
from leonard.grid import GridConfig, full_grid
from leonard.lbtd import build, parameter_array_of, recover_params, verify_leonard_pair
from leonard.params import split_sequences_of


def stages(cf):
    pair = build(cf)
    pa = parameter_array_of(cf)
    yield "build", pair
    yield "verify", verify_leonard_pair(pair, pa.theta_star)
    yield "split", split_sequences_of(pair.A, pair.Astar, pa.theta, pa.theta_star) == \
        (pa.varphi, pa.phi)
    yield "aw", verify_aw(pair.A, pair.Astar, aw_scalars(pa))
    yield "recover", recover_params(pair).rebuild() == pair
    yield "det", determinant(pair.Astar) == reduce(lambda u, v: u * v, pa.theta_star)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--seed", type=int, default=GridConfig().seed)
    ap.add_argument("--json", help="write per-tuple results here")
    args = ap.parse_args()

    cfg = replace(GridConfig(), seed=args.seed,
                  ds=tuple(d for d in GridConfig().ds if d <= args.max_d))
    grid = [cf for cf in full_grid(cfg) if cf.d <= args.max_d]
    totals = defaultdict(float)
    rows, failures = [], 0
    for cf in grid:
        row = {"d": cf.d, "params": [str(getattr(cf, k)) for k in
                                     ("a", "a_prime", "b", "b_prime", "c", "alpha", "alpha_star")]}
        clock = time.perf_counter()
        for name, outcome in stages(cf):
            now = time.perf_counter()
            totals[(cf.d, name)] += now - clock
            clock = now
            if outcome is False:
                row.setdefault("failed", []).append(name)
        failures += "failed" in row
        rows.append(row)

    names = ("build", "verify", "split", "aw", "recover", "det")
    print(f"{'d':>3} {'n':>4} " + " ".join(f"{n:>8}" for n in names))
    for d in sorted({cf.d for cf in grid}):
        n = sum(cf.d == d for cf in grid)
        print(f"{d:>3} {n:>4} " + " ".join(f"{totals[(d, s)]:8.3f}" for s in names))
    print(f"{len(grid)} tuples, {failures} with a failed check, "
          f"{sum(totals.values()):.2f}s total")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
