"""Representative vectors of state subsets and their Hebbian weight contribution.

A subset of K states over {-1, +1}^N has a per-index majority vector psi.
Writing each member as psi * (1 - 2*delta^k) with delta^k in {0, 1}^N gives
per-index disagreement rates p_i in [0, 0.5], and the subset's Hebbian
contribution to the weight matrix factors into psi_j * psi_i scaled by an
agreement term that these functions compute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .learning import as_training_set

__all__ = [
    "BernoulliProfile",
    "DeltaMatrix",
    "RepresentativeVector",
    "agreement_factor",
    "bernoulli_profile",
    "decompose",
    "pairwise_factor",
    "predicted_representative_term",
    "representative",
]


@dataclass(frozen=True)
class RepresentativeVector:
    """Per-index majority vector psi; ties are broken to +1 and recorded."""

    psi: np.ndarray
    tie_indices: frozenset[int]


@dataclass(frozen=True)
class DeltaMatrix:
    """K x N disagreement indicators: deltas[k, i] = 1 iff state k differs from psi at i."""

    deltas: np.ndarray
    source_size: int


@dataclass(frozen=True)
class BernoulliProfile:
    """Per-index disagreement rates and their grand mean, all in [0, 0.5]."""

    p_per_index: np.ndarray
    pooled_p: float


def representative(subset) -> RepresentativeVector:
    """Majority value per index over the subset; exact ties become +1."""
    ts = as_training_set(subset)
    column_sums = ts.sum(axis=0, dtype=np.int64)
    psi = np.where(column_sums >= 0, 1, -1).astype(np.int8)
    ties = frozenset(int(i) for i in np.flatnonzero(column_sums == 0))
    return RepresentativeVector(psi=psi, tie_indices=ties)


def decompose(subset, rv: RepresentativeVector) -> DeltaMatrix:
    """Disagreement indicators satisfying psi_i * (1 - 2*deltas[k, i]) = s^k_i exactly."""
    ts = as_training_set(subset)
    if ts.shape[1] != rv.psi.shape[0]:
        raise ValueError(f"dimension mismatch: subset has N={ts.shape[1]}, representative has N={rv.psi.shape[0]}")
    deltas = (ts != rv.psi).astype(np.uint8)
    return DeltaMatrix(deltas=deltas, source_size=ts.shape[0])


def bernoulli_profile(dm: DeltaMatrix) -> BernoulliProfile:
    """Per-index disagreement rates p_i = mean_k deltas[k, i] and their grand mean.

    Raises if any p_i exceeds 0.5, which cannot happen when the deltas came
    from a true majority vector.
    """
    p = dm.deltas.mean(axis=0, dtype=np.float64)
    if np.any(p > 0.5):
        bad = int(np.argmax(p))
        raise ValueError(f"p_per_index[{bad}] = {p[bad]} exceeds 0.5; deltas are not relative to a majority vector")
    return BernoulliProfile(p_per_index=p, pooled_p=float(dm.deltas.mean(dtype=np.float64)))


def agreement_factor(p: float) -> float:
    """Uniform-rate agreement term 1 - 4p + 4p^2 = (1 - 2p)^2, decreasing on [0, 0.5]."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"p must lie in [0, 0.5], got {p}")
    return 1.0 - 4.0 * p + 4.0 * p * p


def pairwise_factor(p_j: float, p_i: float) -> float:
    """Two-index agreement term 1 - 2p_j - 2p_i + 4 p_j p_i = (1 - 2p_j)(1 - 2p_i)."""
    for name, value in (("p_j", p_j), ("p_i", p_i)):
        if not 0.0 <= value <= 0.5:
            raise ValueError(f"{name} must lie in [0, 0.5], got {value}")
    return 1.0 - 2.0 * p_j - 2.0 * p_i + 4.0 * p_j * p_i


def predicted_representative_term(
    rv: RepresentativeVector,
    profile: BernoulliProfile,
    subset_size: int,
    total_k: int,
    pooled: bool = True,
) -> np.ndarray:
    """Predicted subset contribution to the weights: (|subset|/K) * psi_j psi_i * agreement.

    With pooled=True the agreement term uses the pooled rate; otherwise each
    entry uses the pair of per-index rates. Diagonal is zeroed. This models
    only the subset's own term; the remaining states' contribution is left to
    empirical subtraction.
    """
    if subset_size < 1:
        raise ValueError(f"subset_size must be >= 1, got {subset_size}")
    if total_k < subset_size:
        raise ValueError(f"subset_size {subset_size} exceeds total state count {total_k}")
    n = rv.psi.shape[0]
    if profile.p_per_index.shape[0] != n:
        raise ValueError(f"dimension mismatch: profile has N={profile.p_per_index.shape[0]}, representative has N={n}")
    psi = rv.psi.astype(np.float64)
    if pooled:
        factor = agreement_factor(profile.pooled_p)
    else:
        p = profile.p_per_index
        factor = 1.0 - 2.0 * p[:, None] - 2.0 * p[None, :] + 4.0 * np.outer(p, p)
    w = (subset_size / total_k) * np.outer(psi, psi) * factor
    np.fill_diagonal(w, 0.0)
    return w
