#!/usr/bin/env python3
"""Comprehensive grid sweep over dimension, prototype count, examples, and noise.

Desk scale keeps dimensions at or below 100 with 2,000 probes per cell so the
sweep finishes on a laptop; paper scale extends to 1,000 units and 100,000
probes per cell and is an opt-in soak (hours, not minutes). Rows stream to
the CSV as cells finish, so a partial run is still usable.

    python3 scripts/run_appendix_grid.py --out grid_desk.csv
    python3 scripts/run_appendix_grid.py --scale paper --out grid_full.csv
"""

import argparse
import sys
import time

from hopfield_prototypes import io
from hopfield_prototypes.experiments import grid_search

DESK = {
    "n_values": [50, 100],
    "prototype_values": [1, 2, 5],
    "example_values": [10, 50, 100],
    "p_values": [0.1, 0.2, 0.3],
    "probes": 2_000,
}
PAPER = {
    "n_values": [100, 250, 500, 1000],
    "prototype_values": [1, 2, 5, 10],
    "example_values": [10, 50, 100, 200],
    "p_values": [0.05, 0.1, 0.2, 0.3],
    "probes": 100_000,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", choices=["desk", "paper"], default="desk")
    parser.add_argument("--seeds", type=int, default=1)
    parser.add_argument("--master-seed", type=int, default=0)
    parser.add_argument("--out", default="grid.csv")
    args = parser.parse_args()

    grid = PAPER if args.scale == "paper" else DESK
    out = io.resolve_out_path(args.out)
    io.write_config_sidecar(out, {**vars(args), **grid})

    start = time.time()
    done = 0
    with io.ExperimentCsvWriter(out) as writer:
        for cell in grid_search(
            grid["n_values"], grid["prototype_values"], grid["example_values"], grid["p_values"],
            probes_total=grid["probes"],
            master_seed=args.master_seed,
            seeds_per_cell=args.seeds,
        ):
            done += 1
            if cell.error is not None:
                print(f"  cell failed: {cell.error}", file=sys.stderr)
                continue
            writer.append(cell.result, seed=cell.seed_index)
            if done % 10 == 0:
                print(f"  {done} cells, {time.time() - start:.0f}s elapsed")
    print(f"{done} cells in {time.time() - start:.0f}s -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
