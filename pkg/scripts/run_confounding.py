#!/usr/bin/env python3
"""Confounding-states experiment: one prototype in a 250-unit network, trained
alongside growing numbers of uniformly random states.

Sweeps confounder count x examples x noise and writes one experiment CSV
(plus config sidecar) ready for the distance/proportion figure scripts.

    python3 scripts/run_confounding.py --out confounding.csv
    python3 scripts/run_confounding.py --scale paper --out confounding_full.csv
"""

import argparse
import sys
import time

from hopfield_prototypes import io
from hopfield_prototypes.experiments import grid_search


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=250)
    parser.add_argument("--confounders", type=int, nargs="+", default=[0, 250, 1000])
    parser.add_argument("--examples", type=int, nargs="+", default=[10, 25, 50, 100, 200])
    parser.add_argument("--ps", type=float, nargs="+", default=[0.05, 0.10, 0.15, 0.20, 0.25])
    parser.add_argument("--seeds", type=int, default=3, help="seeds per cell")
    parser.add_argument("--scale", choices=["desk", "paper"], default="desk")
    parser.add_argument("--master-seed", type=int, default=0)
    parser.add_argument("--out", default="confounding.csv")
    args = parser.parse_args()

    probes = 100_000 if args.scale == "paper" else 2_000
    out = io.resolve_out_path(args.out)
    io.write_config_sidecar(out, {**vars(args), "probes_total": probes})

    start = time.time()
    cells = 0
    with io.ExperimentCsvWriter(out) as writer:
        for cell in grid_search(
            [args.n], [1], args.examples, args.ps,
            confounders_values=args.confounders,
            probes_total=probes,
            master_seed=args.master_seed,
            seeds_per_cell=args.seeds,
        ):
            cells += 1
            if cell.error is not None:
                print(f"  cell failed: {cell.error}", file=sys.stderr)
                continue
            writer.append(cell.result, seed=cell.seed_index)
            r = cell.result
            print(f"  conf={cell.confounders:4d} ex={cell.examples:3d} p={cell.p:.2f} "
                  f"rep={cell.seed_index} distance={r.distance_most_recalled:4d} "
                  f"proportion={r.proportion_most_recalled:.3f}")
    print(f"{cells} cells in {time.time() - start:.0f}s -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
