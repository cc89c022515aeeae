"""Probe-census experiment protocol: train, probe, census, classify, profile.

A trained network is probed with many noisy copies of each base vector; the
converged endpoints are counted into a census keyed by exact state content.
Prototype formation shows up as the census mode sitting at (or next to) a
base with a dominant share of the probes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .datagen import (
    STREAM_PROBES,
    STREAM_SWEEPS,
    DatasetConfig,
    PrototypeDataset,
    generate,
    probes_for,
    stream_rng,
)
from .learning import hebbian
from .network import DEFAULT_MAX_SWEEPS, relax

__all__ = [
    "EnergyProfile",
    "ExperimentResult",
    "GridResult",
    "LabeledState",
    "RecallCensus",
    "classify_states",
    "distance_to_nearest_base",
    "energy_profiles",
    "grid_search",
    "manhattan",
    "run_experiment",
    "run_probe_census",
    "state_key",
]

LEARNED = "learned"
MOST_RECALLED = "most_recalled"
SPURIOUS = "spurious"


def state_key(s: np.ndarray) -> bytes:
    """Hashable exact-content key for a spin vector."""
    return s.astype(np.int8, copy=False).tobytes()


def key_to_state(key: bytes) -> np.ndarray:
    return np.frombuffer(key, dtype=np.int8).copy()


@dataclass
class RecallCensus:
    """Multiset of relaxation endpoints with convergence bookkeeping."""

    counts: dict[bytes, int]
    unconverged_counts: dict[bytes, int]
    total_probes: int
    converged_probes: int
    sweeps_mean: float
    sweeps_max: int
    N: int

    def top(self, n: int) -> list[tuple[np.ndarray, int]]:
        """The n most common final states; count ties break to the lexicographically
        smaller spin vector for deterministic reports."""
        ranked = sorted(
            self.counts.items(),
            key=lambda kv: (-kv[1], tuple(key_to_state(kv[0]))),
        )
        return [(key_to_state(k), c) for k, c in ranked[:n]]


def _census_chunk(w: np.ndarray, probes: np.ndarray, first_index: int, seed: int, max_sweeps: int):
    counts: dict[bytes, int] = {}
    unconverged: dict[bytes, int] = {}
    converged_probes = 0
    sweeps_sum = 0
    sweeps_max = 0
    for offset in range(probes.shape[0]):
        rng = stream_rng(seed, STREAM_SWEEPS, first_index + offset)
        res = relax(w, probes[offset], rng, max_sweeps=max_sweeps)
        key = state_key(res.final_state)
        counts[key] = counts.get(key, 0) + 1
        if res.converged:
            converged_probes += 1
        else:
            unconverged[key] = unconverged.get(key, 0) + 1
        sweeps_sum += res.sweeps_used
        sweeps_max = max(sweeps_max, res.sweeps_used)
    return counts, unconverged, converged_probes, sweeps_sum, sweeps_max


def run_probe_census(
    w: np.ndarray,
    probes: np.ndarray,
    seed: int = 0,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    workers: int = 1,
) -> RecallCensus:
    """Relax every probe and count endpoints by exact content.

    Probes that hit max_sweeps are censused by their terminal state and
    tracked in ``unconverged_counts``. Each probe gets its own generator
    stream keyed by global probe index, so the census is identical whatever
    the execution order or worker count.
    """
    probes = np.asarray(probes, dtype=np.int8)
    if probes.ndim != 2 or probes.shape[0] == 0:
        raise ValueError(f"probes must be a non-empty 2-D array, got shape {probes.shape}")
    if probes.shape[1] != w.shape[0]:
        raise ValueError(f"dimension mismatch: probes have N={probes.shape[1]}, weights are {w.shape[0]}x{w.shape[0]}")

    if workers <= 1:
        parts = [_census_chunk(w, probes, 0, seed, max_sweeps)]
    else:
        bounds = np.linspace(0, probes.shape[0], workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_census_chunk, w, probes[a:b], int(a), seed, max_sweeps)
                for a, b in zip(bounds[:-1], bounds[1:])
                if b > a
            ]
            parts = [f.result() for f in futures]

    counts: dict[bytes, int] = {}
    unconverged: dict[bytes, int] = {}
    converged_probes = 0
    sweeps_sum = 0
    sweeps_max = 0
    for c, u, conv, ssum, smax in parts:
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        for k, v in u.items():
            unconverged[k] = unconverged.get(k, 0) + v
        converged_probes += conv
        sweeps_sum += ssum
        sweeps_max = max(sweeps_max, smax)
    return RecallCensus(
        counts=counts,
        unconverged_counts=unconverged,
        total_probes=probes.shape[0],
        converged_probes=converged_probes,
        sweeps_mean=sweeps_sum / probes.shape[0],
        sweeps_max=sweeps_max,
        N=probes.shape[1],
    )


def manhattan(a: np.ndarray, b: np.ndarray) -> int:
    """Sum of |a_i - b_i|; twice the Hamming distance for spin vectors."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return int(np.abs(a.astype(np.int32) - b.astype(np.int32)).sum())


def distance_to_nearest_base(s: np.ndarray, bases: np.ndarray) -> tuple[int, int]:
    """(min manhattan distance to any base, index of that base); ties take the lowest index."""
    bases = np.asarray(bases)
    if bases.ndim != 2 or bases.shape[0] == 0:
        raise ValueError("bases must be a non-empty 2-D array")
    distances = np.abs(bases.astype(np.int32) - s.astype(np.int32)).sum(axis=1)
    idx = int(np.argmin(distances))
    return int(distances[idx]), idx


@dataclass(frozen=True)
class LabeledState:
    """A state with its class label; overlaps between classes are flagged."""

    state: np.ndarray
    label: str
    also_learned: bool = False
    stable: bool | None = None


def classify_states(
    census: RecallCensus,
    dataset: PrototypeDataset,
    n_top: int | None = None,
    w: np.ndarray | None = None,
) -> list[LabeledState]:
    """Label trained states "learned", the top census states "most_recalled",
    and the remaining census endpoints "spurious".

    Every trained state is labeled learned regardless of stability. A state
    that is both learned and among the top census states gets most_recalled
    with ``also_learned`` set. When ``w`` is given, each labeled state also
    records whether it is strictly stable.
    """
    if n_top is None:
        n_top = dataset.config.n_prototypes
    learned_keys = {state_key(s) for s in dataset.training_states()}
    top_keys = [state_key(s) for s, _ in census.top(n_top)]
    top_set = set(top_keys)

    def stability(s: np.ndarray) -> bool | None:
        if w is None:
            return None
        return bool(np.all(s * (s @ w) > 0.0))

    labeled: list[LabeledState] = []
    for key in top_keys:
        s = key_to_state(key)
        labeled.append(LabeledState(s, MOST_RECALLED, also_learned=key in learned_keys, stable=stability(s)))
    for key in sorted(learned_keys):
        if key in top_set:
            continue
        s = key_to_state(key)
        labeled.append(LabeledState(s, LEARNED, stable=stability(s)))
    for key in sorted(k for k in census.counts if k not in top_set and k not in learned_keys):
        s = key_to_state(key)
        labeled.append(LabeledState(s, SPURIOUS, stable=stability(s)))
    return labeled


@dataclass(frozen=True)
class EnergyProfile:
    """Sorted per-neuron energies of one state; negative entries are stable units."""

    state_class: str
    sorted_energies: np.ndarray


def energy_profiles(w: np.ndarray, labeled: list[LabeledState]) -> list[EnergyProfile]:
    """Ascending per-neuron energy fingerprint for each labeled state."""
    profiles = []
    for item in labeled:
        s = item.state
        energies = -(s * (s @ w))
        profiles.append(EnergyProfile(state_class=item.label, sorted_energies=np.sort(energies)))
    return profiles


@dataclass
class ExperimentResult:
    """Everything one train-and-probe run measures."""

    dataset_config: DatasetConfig
    probe_p: float
    probes_total: int
    seed: int
    max_sweeps: int
    census: RecallCensus
    top_states: list[tuple[np.ndarray, int]]
    distances: list[int]
    nearest_bases: list[int]
    proportions: list[float]
    converged_fraction: float
    labeled: list[LabeledState]
    energy_profiles: list[EnergyProfile] = field(default_factory=list)

    @property
    def alpha(self) -> float:
        return self.dataset_config.n_prototypes / self.dataset_config.N

    @property
    def distance_most_recalled(self) -> int:
        return self.distances[0]

    @property
    def proportion_most_recalled(self) -> float:
        return self.proportions[0]


def run_experiment(
    dataset: PrototypeDataset,
    probe_p: float | None = None,
    probes_total: int = 10_000,
    seed: int = 0,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    n_top: int | None = None,
    include_profiles: bool = True,
    workers: int = 1,
) -> ExperimentResult:
    """Hebbian-train on the dataset's examples and confounders, then probe.

    The bases are never trained; probes are noisy copies of them, split as
    evenly as possible across bases. probe_p defaults to the dataset's own
    noise level.
    """
    config = dataset.config
    if probe_p is None:
        probe_p = config.bernoulli_p
    if probes_total < 1:
        raise ValueError(f"probes_total must be >= 1, got {probes_total}")
    if n_top is None:
        n_top = config.n_prototypes

    w = hebbian(dataset.training_states())

    n_bases = dataset.bases.shape[0]
    per_base = [probes_total // n_bases + (1 if g < probes_total % n_bases else 0) for g in range(n_bases)]
    probe_blocks = [
        probes_for(dataset.bases[g], probe_p, per_base[g], stream_rng(seed, STREAM_PROBES, g))
        for g in range(n_bases)
        if per_base[g] > 0
    ]
    probes = np.concatenate(probe_blocks)

    census = run_probe_census(w, probes, seed=seed, max_sweeps=max_sweeps, workers=workers)

    top_states = census.top(n_top)
    distances = []
    nearest = []
    proportions = []
    for s, count in top_states:
        d, b = distance_to_nearest_base(s, dataset.bases)
        distances.append(d)
        nearest.append(b)
        proportions.append(count / census.total_probes)

    labeled = classify_states(census, dataset, n_top=n_top, w=w)
    profiles = energy_profiles(w, labeled) if include_profiles else []

    return ExperimentResult(
        dataset_config=config,
        probe_p=probe_p,
        probes_total=census.total_probes,
        seed=seed,
        max_sweeps=max_sweeps,
        census=census,
        top_states=top_states,
        distances=distances,
        nearest_bases=nearest,
        proportions=proportions,
        converged_fraction=census.converged_probes / census.total_probes,
        labeled=labeled,
        energy_profiles=profiles,
    )


@dataclass
class GridResult:
    """One grid cell: its coordinates plus either a result or an error string."""

    N: int
    n_prototypes: int
    examples: int
    p: float
    confounders: int
    seed_index: int
    dataset_seed: int
    experiment_seed: int
    result: ExperimentResult | None
    error: str | None = None


def _cell_seed(master_seed: int, entropy: list[int], slot: int) -> int:
    ss = np.random.SeedSequence([master_seed, *entropy, slot])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def grid_search(
    Ns,
    n_prototypes_values,
    examples_values,
    ps,
    confounders_values=(0,),
    probes_total: int = 10_000,
    probe_p: float | None = None,
    master_seed: int = 0,
    seeds_per_cell: int = 1,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    min_separation: float = 0.4,
    include_profiles: bool = False,
    workers: int = 1,
):
    """Run the cartesian grid cell by cell, yielding results incrementally.

    Each cell's seeds derive from the master seed and the cell coordinates,
    so cells are independently re-runnable; a failing cell yields an error
    row instead of aborting the grid.
    """
    cells = [
        (n, protos, ex, p, conf)
        for n in Ns
        for protos in n_prototypes_values
        for ex in examples_values
        for p in ps
        for conf in confounders_values
    ]
    if not cells:
        raise ValueError("grid must be non-empty")
    for n, protos, ex, p, conf in cells:
        for rep in range(seeds_per_cell):
            entropy = [n, protos, ex, int(round(p * 1e9)), conf, rep]
            dataset_seed = _cell_seed(master_seed, entropy, 0)
            experiment_seed = _cell_seed(master_seed, entropy, 1)
            try:
                config = DatasetConfig(
                    N=n,
                    n_prototypes=protos,
                    examples_per_prototype=ex,
                    bernoulli_p=p,
                    n_confounders=conf,
                    min_separation=min_separation,
                    seed=dataset_seed,
                )
                result = run_experiment(
                    generate(config),
                    probe_p=probe_p,
                    probes_total=probes_total,
                    seed=experiment_seed,
                    max_sweeps=max_sweeps,
                    include_profiles=include_profiles,
                    workers=workers,
                )
                yield GridResult(n, protos, ex, p, conf, rep, dataset_seed, experiment_seed, result)
            except ValueError as exc:
                yield GridResult(n, protos, ex, p, conf, rep, dataset_seed, experiment_seed, None, error=str(exc))
