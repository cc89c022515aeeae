"""Datasets with known ground truth: noisy copies of well-separated base vectors.

The generator is PCG64 behind explicit per-purpose streams (bases, examples,
confounders, probes, sweep orders) derived from the dataset seed, so e.g.
changing the probe count never perturbs the dataset content, and datasets
are byte-reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import make_rng

__all__ = [
    "DatasetConfig",
    "PrototypeDataset",
    "generate",
    "noisy_copy",
    "probes_for",
    "random_state",
    "stream_rng",
]

# Stream tags; part of the reproducibility contract.
STREAM_BASES = 1
STREAM_EXAMPLES = 2
STREAM_CONFOUNDERS = 3
STREAM_PROBES = 4
STREAM_SWEEPS = 5

_SEPARATION_RETRIES = 1000


def stream_rng(seed: int, stream: int, *extra: int) -> np.random.Generator:
    """Independent generator for (seed, stream tag, extra keys)."""
    return make_rng(np.random.SeedSequence([seed, stream, *extra]))


@dataclass(frozen=True)
class DatasetConfig:
    """Shape and noise parameters of a generated prototype dataset."""

    N: int
    n_prototypes: int
    examples_per_prototype: int
    bernoulli_p: float
    n_confounders: int = 0
    min_separation: float = 0.4
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.n_prototypes < 1:
            raise ValueError(f"n_prototypes must be >= 1, got {self.n_prototypes}")
        if self.examples_per_prototype < 1:
            raise ValueError(f"examples_per_prototype must be >= 1, got {self.examples_per_prototype}")
        if not 0.0 <= self.bernoulli_p <= 0.5:
            raise ValueError(f"bernoulli_p must lie in [0, 0.5], got {self.bernoulli_p}")
        if self.n_confounders < 0:
            raise ValueError(f"n_confounders must be >= 0, got {self.n_confounders}")
        if not 0.0 <= self.min_separation <= 1.0:
            raise ValueError(f"min_separation must lie in [0, 1], got {self.min_separation}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class PrototypeDataset:
    """Ground-truth bases, their noisy example groups, and optional confounders."""

    bases: np.ndarray        # n_prototypes x N
    examples: np.ndarray     # n_prototypes x examples_per_prototype x N
    confounders: np.ndarray  # n_confounders x N
    config: DatasetConfig

    def training_states(self) -> np.ndarray:
        """All states presented for learning: every example plus every confounder.

        The bases themselves are never part of the training set.
        """
        flat = self.examples.reshape(-1, self.config.N)
        if self.confounders.shape[0]:
            return np.concatenate([flat, self.confounders])
        return flat.copy()


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform spin vector: each entry independently -1 or +1."""
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    return (rng.integers(0, 2, size=n, dtype=np.int8) * 2 - 1).astype(np.int8)


def noisy_copy(base: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    """Copy of base with each spin independently inverted with probability p."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"p must lie in [0, 0.5], got {p}")
    flips = rng.random(base.shape[0]) < p
    return np.where(flips, -base, base).astype(np.int8)


def probes_for(base: np.ndarray, probe_p: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """count independent noisy copies of base, as a count x N array."""
    if count < 1:
        raise ValueError(f"probe count must be >= 1, got {count}")
    if not 0.0 <= probe_p <= 0.5:
        raise ValueError(f"probe_p must lie in [0, 0.5], got {probe_p}")
    flips = rng.random((count, base.shape[0])) < probe_p
    return np.where(flips, -base, base).astype(np.int8)


def _hamming(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(a != b))


def generate(config: DatasetConfig) -> PrototypeDataset:
    """Build a dataset per config; pure function of the config including its seed.

    Bases are rejection-sampled until all pairwise Hamming distances reach
    min_separation * N, erroring out after a bounded number of retries.
    """
    floor = config.min_separation * config.N
    rng_bases = stream_rng(config.seed, STREAM_BASES)
    bases: list[np.ndarray] = []
    for k in range(config.n_prototypes):
        for attempt in range(_SEPARATION_RETRIES + 1):
            candidate = random_state(config.N, rng_bases)
            if all(_hamming(candidate, b) >= floor for b in bases):
                bases.append(candidate)
                break
        else:
            raise ValueError(
                f"could not place base {k} at separation >= {floor:.1f} bits "
                f"within {_SEPARATION_RETRIES} retries"
            )

    rng_examples = stream_rng(config.seed, STREAM_EXAMPLES)
    examples = np.empty((config.n_prototypes, config.examples_per_prototype, config.N), dtype=np.int8)
    for g, base in enumerate(bases):
        for e in range(config.examples_per_prototype):
            examples[g, e] = noisy_copy(base, config.bernoulli_p, rng_examples)

    rng_conf = stream_rng(config.seed, STREAM_CONFOUNDERS)
    confounders = np.empty((config.n_confounders, config.N), dtype=np.int8)
    for c in range(config.n_confounders):
        confounders[c] = random_state(config.N, rng_conf)

    return PrototypeDataset(
        bases=np.stack(bases), examples=examples, confounders=confounders, config=config
    )
