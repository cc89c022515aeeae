#!/usr/bin/env python3
"""Recall quality in the three load phases: below, at, and above the 0.138
prototype capacity.

For each phase the prototype count is alpha * N; the sweep covers examples
per prototype and example noise. Writes one experiment CSV per phase plus an
energy-profile CSV from a representative run of each.

    python3 scripts/run_phase_grids.py --out-prefix phases
"""

import argparse
import sys
import time

from hopfield_prototypes import io
from hopfield_prototypes.datagen import DatasetConfig, generate
from hopfield_prototypes.experiments import grid_search, run_experiment

PHASES = {"below": 0.05, "at": 0.125, "above": 0.5}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=100)
    parser.add_argument("--examples", type=int, nargs="+", default=[5, 10, 20, 50, 100])
    parser.add_argument("--ps", type=float, nargs="+", default=[0.05, 0.1, 0.2, 0.3])
    parser.add_argument("--seeds", type=int, default=3)
    parser.add_argument("--scale", choices=["desk", "paper"], default="desk")
    parser.add_argument("--master-seed", type=int, default=0)
    parser.add_argument("--out-prefix", default="phase")
    args = parser.parse_args()

    probes = 100_000 if args.scale == "paper" else 2_000
    start = time.time()
    for phase, alpha in PHASES.items():
        protos = max(1, round(alpha * args.n))
        out = io.resolve_out_path(f"{args.out_prefix}_{phase}.csv")
        io.write_config_sidecar(out, {**vars(args), "phase": phase, "alpha": alpha,
                                      "n_prototypes": protos, "probes_total": probes})
        with io.ExperimentCsvWriter(out) as writer:
            for cell in grid_search(
                [args.n], [protos], args.examples, args.ps,
                probes_total=probes,
                master_seed=args.master_seed,
                seeds_per_cell=args.seeds,
            ):
                if cell.error is not None:
                    print(f"  {phase} cell failed: {cell.error}", file=sys.stderr)
                    continue
                writer.append(cell.result, seed=cell.seed_index)
        print(f"{phase}: alpha={alpha} ({protos} prototypes) -> {out}")

        # one representative run per phase for the sorted energy fingerprints
        cfg = DatasetConfig(N=args.n, n_prototypes=protos,
                            examples_per_prototype=args.examples[-1],
                            bernoulli_p=args.ps[1] if len(args.ps) > 1 else args.ps[0],
                            seed=args.master_seed)
        result = run_experiment(generate(cfg), probes_total=probes, seed=args.master_seed)
        profile_out = io.resolve_out_path(f"{args.out_prefix}_{phase}_profiles.csv")
        io.write_profile_csv(profile_out, result.energy_profiles)
        io.write_config_sidecar(profile_out, {**vars(args), "phase": phase,
                                              "n_prototypes": protos, "probes_total": probes})
        print(f"{phase}: profiles -> {profile_out}")
    print(f"done in {time.time() - start:.0f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
