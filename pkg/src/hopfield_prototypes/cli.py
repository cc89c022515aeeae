"""Command-line surface: theory tables, dataset/weight files, and experiment CSVs."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .datagen import STREAM_PROBES, DatasetConfig, generate, probes_for, stream_rng
from .experiments import energy_profiles, grid_search, run_experiment, run_probe_census
from .learning import hebbian
from .network import DEFAULT_MAX_SWEEPS
from .oracle import enumerate_stable
from .theory import CapacityQuery, capacity_ratio, theory_curve

DESK_PROBES = 10_000
PAPER_PROBES = 100_000


def _resolved_probes(args) -> int:
    if args.probes is not None:
        return args.probes
    return PAPER_PROBES if args.scale == "paper" else DESK_PROBES


def _echo_config(out_path: str, args, **extra) -> None:
    config = {k: v for k, v in vars(args).items() if k != "func"}
    config.update(extra)
    io.write_config_sidecar(out_path, config)


def _add_scale(parser) -> None:
    parser.add_argument("--scale", choices=["desk", "paper"], default="desk",
                        help="desk: 10,000 probes (default); paper: 100,000 probes")
    parser.add_argument("--probes", type=int, default=None, help="explicit probe count, overrides --scale")


def _add_dataset_args(parser) -> None:
    parser.add_argument("--n", type=int, required=True, help="network dimension N")
    parser.add_argument("--prototypes", type=int, default=1, help="number of base vectors")
    parser.add_argument("--examples", type=int, required=True, help="examples per prototype")
    parser.add_argument("--p", type=float, required=True, help="Bernoulli noise of the examples, in [0, 0.5]")
    parser.add_argument("--confounders", type=int, default=0, help="extra uniformly random trained states")
    parser.add_argument("--min-separation", type=float, default=0.4,
                        help="pairwise Hamming floor between bases, as a fraction of N")
    parser.add_argument("--seed", type=int, default=0)


def _dataset_from_args(args, seed: int | None = None) -> DatasetConfig:
    return DatasetConfig(
        N=args.n,
        n_prototypes=args.prototypes,
        examples_per_prototype=args.examples,
        bernoulli_p=args.p,
        n_confounders=args.confounders,
        min_separation=args.min_separation,
        seed=args.seed if seed is None else seed,
    )


def cmd_theory_curve(args) -> int:
    if args.ratios:
        ratios = args.ratios
    else:
        ratios = list(np.geomspace(args.ratio_min, args.ratio_max, args.ratio_count))
    rows = theory_curve(args.subset_sizes, args.ps, ratios)
    out = io.resolve_out_path(args.out)
    io.write_theory_csv(out, rows)
    _echo_config(out, args, ratios_resolved=[float(r) for r in ratios])
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_capacity(args) -> int:
    ratio = capacity_ratio(CapacityQuery(target_p_error=args.target, subset_size=args.subset_size, p=args.p))
    print(repr(ratio))
    return 0


def cmd_generate(args) -> int:
    dataset = generate(_dataset_from_args(args))
    out = io.resolve_out_path(args.out)
    io.write_dataset(out, dataset)
    _echo_config(out, args)
    print(f"wrote dataset ({dataset.training_states().shape[0]} trained states) to {out}")
    return 0


def cmd_train(args) -> int:
    dataset = io.read_dataset(args.dataset)
    w = hebbian(dataset.training_states())
    out = io.resolve_out_path(args.out)
    io.write_weights(out, w)
    _echo_config(out, args, N=dataset.config.N)
    print(f"wrote {w.shape[0]}x{w.shape[0]} weights to {out}")
    return 0


def cmd_probe(args) -> int:
    w = io.read_weights(args.weights)
    if args.probes_file:
        probes = io.read_states(args.probes_file)
    else:
        if not args.dataset:
            raise ValueError("probe needs either --probes-file or --dataset")
        dataset = io.read_dataset(args.dataset)
        probe_p = dataset.config.bernoulli_p if args.probe_p is None else args.probe_p
        count = args.count
        bases = dataset.bases
        per_base = [count // len(bases) + (1 if g < count % len(bases) else 0) for g in range(len(bases))]
        probes = np.concatenate([
            probes_for(bases[g], probe_p, per_base[g], stream_rng(args.seed, STREAM_PROBES, g))
            for g in range(len(bases)) if per_base[g] > 0
        ])
    census = run_probe_census(w, probes, seed=args.seed, max_sweeps=args.max_sweeps)
    out = io.resolve_out_path(args.out)
    io.write_census_csv(out, census)
    _echo_config(out, args, total_probes=census.total_probes)
    print(f"censused {census.total_probes} probes ({census.converged_probes} converged) to {out}")
    return 0


def cmd_experiment(args) -> int:
    probes_total = _resolved_probes(args)
    dataset = generate(_dataset_from_args(args))
    result = run_experiment(
        dataset,
        probe_p=args.probe_p,
        probes_total=probes_total,
        seed=args.seed,
        max_sweeps=args.max_sweeps,
        include_profiles=args.profiles_out is not None,
    )
    out = io.resolve_out_path(args.out)
    io.write_experiment_csv(out, [result])
    _echo_config(out, args, probes_total=probes_total, probe_p_resolved=result.probe_p)
    if args.profiles_out:
        profiles_out = io.resolve_out_path(args.profiles_out)
        io.write_profile_csv(profiles_out, result.energy_profiles)
        _echo_config(profiles_out, args, probes_total=probes_total)
    print(
        f"most recalled: distance={result.distance_most_recalled} "
        f"proportion={result.proportion_most_recalled:.4f} -> {out}"
    )
    return 0


def cmd_grid(args) -> int:
    probes_total = _resolved_probes(args)
    out = io.resolve_out_path(args.out)
    _echo_config(out, args, probes_total=probes_total)
    errors = 0
    cells = 0
    with io.ExperimentCsvWriter(out) as writer:
        for cell in grid_search(
            args.n_values,
            args.prototype_values,
            args.example_values,
            args.p_values,
            confounders_values=args.confounder_values,
            probes_total=probes_total,
            probe_p=args.probe_p,
            master_seed=args.master_seed,
            seeds_per_cell=args.seeds_per_cell,
            max_sweeps=args.max_sweeps,
        ):
            cells += 1
            if cell.error is not None:
                errors += 1
                print(f"cell N={cell.N} protos={cell.n_prototypes} ex={cell.examples} "
                      f"p={cell.p} conf={cell.confounders} rep={cell.seed_index}: {cell.error}",
                      file=sys.stderr)
                continue
            writer.append(cell.result, seed=cell.seed_index)
    print(f"grid complete: {cells} cells, {errors} errors -> {out}")
    return 0


def cmd_enumerate(args) -> int:
    w = io.read_weights(args.weights)
    stable = enumerate_stable(w)
    out = io.resolve_out_path(args.out)
    io.write_states(out, stable.states)
    _echo_config(out, args, N=stable.N)
    print(f"{stable.states.shape[0]} strictly stable states of {stable.N} units -> {out}")
    return 0


def cmd_profile(args) -> int:
    from .experiments import LabeledState

    w = io.read_weights(args.weights)
    labeled = []
    for spec in args.states:
        if "=" not in spec:
            raise ValueError(f"--states expects CLASS=PATH, got {spec!r}")
        label, path = spec.split("=", 1)
        for s in io.read_states(path):
            labeled.append(LabeledState(state=s, label=label))
    profiles = energy_profiles(w, labeled)
    out = io.resolve_out_path(args.out)
    io.write_profile_csv(out, profiles)
    _echo_config(out, args)
    print(f"wrote {len(profiles)} profiles to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfield-proto",
        description="Hopfield network prototype-formation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory-curve", help="evaluate the error-probability surface to CSV")
    p.add_argument("--subset-sizes", type=int, nargs="+", default=[1])
    p.add_argument("--ps", type=float, nargs="+", default=[0.0])
    p.add_argument("--ratios", type=float, nargs="+", default=None, help="explicit K/N grid")
    p.add_argument("--ratio-min", type=float, default=0.01)
    p.add_argument("--ratio-max", type=float, default=10.0)
    p.add_argument("--ratio-count", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_theory_curve)

    p = sub.add_parser("capacity", help="largest K/N ratio meeting a target error probability")
    p.add_argument("--subset-size", type=int, default=1)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--target", type=float, required=True)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("generate", help="generate a prototype dataset file")
    _add_dataset_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="Hebbian-train weights from a dataset file")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("probe", help="relax probes against trained weights, census to CSV")
    p.add_argument("--weights", required=True)
    p.add_argument("--probes-file", default=None, help="states file of explicit probes")
    p.add_argument("--dataset", default=None, help="generate probes from this dataset's bases")
    p.add_argument("--probe-p", type=float, default=None)
    p.add_argument("--count", type=int, default=DESK_PROBES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-sweeps", type=int, default=DEFAULT_MAX_SWEEPS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("experiment", help="full pipeline: generate, train, probe, measure")
    _add_dataset_args(p)
    p.add_argument("--probe-p", type=float, default=None, help="probe noise; defaults to --p")
    p.add_argument("--max-sweeps", type=int, default=DEFAULT_MAX_SWEEPS)
    _add_scale(p)
    p.add_argument("--out", required=True)
    p.add_argument("--profiles-out", default=None, help="also write energy profiles CSV here")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("grid", help="cartesian sweep, rows written incrementally")
    p.add_argument("--n-values", type=int, nargs="+", required=True)
    p.add_argument("--prototype-values", type=int, nargs="+", default=[1])
    p.add_argument("--example-values", type=int, nargs="+", required=True)
    p.add_argument("--p-values", type=float, nargs="+", required=True)
    p.add_argument("--confounder-values", type=int, nargs="+", default=[0])
    p.add_argument("--probe-p", type=float, default=None)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--seeds-per-cell", type=int, default=1)
    p.add_argument("--max-sweeps", type=int, default=DEFAULT_MAX_SWEEPS)
    _add_scale(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("enumerate", help="brute-force stable set of a small network (N <= 20)")
    p.add_argument("--weights", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("profile", help="energy profiles of labeled states to CSV")
    p.add_argument("--weights", required=True)
    p.add_argument("--states", action="append", required=True, metavar="CLASS=PATH")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_profile)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
