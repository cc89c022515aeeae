"""Binary-state Hopfield network dynamics.

States are vectors over {-1, +1}^N stored as int8 arrays. Weights are a
symmetric float64 matrix with zero diagonal. Updates are asynchronous:
each sweep visits every index once in a fresh seeded permutation, and the
hard-limit activation maps a zero local field to +1.

Sign conventions: the alignment of unit i is ``a_i = s_i * h_i`` with
local field ``h_i = sum_j w[j, i] * s[j]``. A state is stable iff every
alignment is strictly positive. The per-neuron energy reported here is
``-a_i``, so negative energy means the unit is stable; this keeps the
stability inequality and the "negative energy = stable" reading mutually
consistent (they differ by a sign in some formulations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RelaxationResult",
    "activation",
    "as_state",
    "as_weights",
    "is_stable",
    "local_field",
    "make_rng",
    "neuron_energy",
    "relax",
    "total_energy",
    "update_neuron",
]

SeedLike = "int | np.random.SeedSequence | np.random.Generator"

DEFAULT_MAX_SWEEPS = 100


def make_rng(seed) -> np.random.Generator:
    """Build a PCG64 generator from an int seed, SeedSequence, or Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def as_state(values) -> np.ndarray:
    """Validate and return a spin vector as an int8 array.

    Every entry must be exactly -1 or +1.
    """
    s = np.asarray(values)
    if s.ndim != 1 or s.size == 0:
        raise ValueError(f"state must be a non-empty 1-D vector, got shape {s.shape}")
    s = s.astype(np.int8, copy=False)
    if not np.all((s == 1) | (s == -1)):
        raise ValueError("state entries must be exactly -1 or +1")
    return s


def as_weights(entries) -> np.ndarray:
    """Validate and return a weight matrix: square, symmetric, zero diagonal."""
    w = np.asarray(entries, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] == 0:
        raise ValueError(f"weights must be a non-empty square matrix, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weight matrix entries must be finite")
    if not np.array_equal(w, w.T):
        raise ValueError("weight matrix must be exactly symmetric")
    if np.any(np.diagonal(w) != 0.0):
        raise ValueError("weight matrix must have a zero diagonal")
    return w


def _check_pair(w: np.ndarray, s: np.ndarray) -> None:
    if w.shape[0] != s.shape[0]:
        raise ValueError(f"dimension mismatch: weights are {w.shape[0]}x{w.shape[0]}, state has N={s.shape[0]}")


def _check_index(s: np.ndarray, i: int) -> None:
    if not 0 <= i < s.shape[0]:
        raise IndexError(f"neuron index {i} out of range for N={s.shape[0]}")


def local_field(w: np.ndarray, s: np.ndarray, i: int) -> float:
    """Field seen by unit i: sum_j w[j, i] * s[j]."""
    _check_pair(w, s)
    _check_index(s, i)
    return float(s @ w[:, i])


def activation(x: float) -> int:
    """Hard limiter: +1 for x >= 0, -1 for x < 0. Note the tie goes to +1."""
    if not math.isfinite(x):
        raise ValueError(f"activation input must be finite, got {x}")
    return 1 if x >= 0 else -1


def update_neuron(w: np.ndarray, s: np.ndarray, i: int) -> tuple[np.ndarray, bool]:
    """Asynchronous single-unit update: returns (new state, flipped).

    The returned state is a copy equal to ``s`` everywhere except possibly
    at ``i``, which becomes ``activation(local_field(w, s, i))``.
    """
    new_value = activation(local_field(w, s, i))
    out = s.copy()
    flipped = bool(new_value != s[i])
    out[i] = new_value
    return out, flipped


def neuron_energy(w: np.ndarray, s: np.ndarray, i: int) -> float:
    """Per-unit energy -s_i * h_i; strictly negative iff unit i is stable."""
    return -float(s[i]) * local_field(w, s, i)


def is_stable(w: np.ndarray, s: np.ndarray) -> bool:
    """True iff s_i * h_i > 0 for every index (strict inequality)."""
    _check_pair(w, s)
    alignments = s * (s @ w)
    return bool(np.all(alignments > 0.0))


def total_energy(w: np.ndarray, s: np.ndarray) -> float:
    """Quadratic energy -1/2 * sum_ij w[i, j] * s_i * s_j."""
    _check_pair(w, s)
    sf = s.astype(np.float64)
    return float(-0.5 * (sf @ w @ sf))


@dataclass(frozen=True)
class RelaxationResult:
    """Outcome of an asynchronous relaxation run."""

    final_state: np.ndarray
    sweeps_used: int
    converged: bool
    flips_total: int


def relax(w: np.ndarray, s0: np.ndarray, seed, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> RelaxationResult:
    """Relax s0 under asynchronous updates until a flip-free sweep or max_sweeps.

    Each sweep visits all N indices in a fresh uniformly-random permutation
    drawn from the seeded generator. Convergence is declared on the first
    sweep with zero flips, so a converged final state is a fixed point of
    ``update_neuron`` at every index (the converging sweep re-evaluates the
    fields of the final state from scratch).
    """
    w = np.asarray(w, dtype=np.float64)
    s = as_state(s0).copy()
    _check_pair(w, s)
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be >= 1, got {max_sweeps}")
    rng = make_rng(seed)
    n = s.shape[0]

    flips_total = 0
    sweeps_used = 0
    converged = False
    for _ in range(max_sweeps):
        sweeps_used += 1
        # Fresh fields per sweep: keeps the flip-free sweep an exact
        # fixed-point certificate, immune to incremental-update drift.
        h = s @ w
        flips = 0
        for i in rng.permutation(n):
            new_value = 1 if h[i] >= 0.0 else -1
            if new_value != s[i]:
                s[i] = new_value
                h += (2.0 * new_value) * w[i]
                flips += 1
        flips_total += flips
        if flips == 0:
            converged = True
            break
    return RelaxationResult(final_state=s, sweeps_used=sweeps_used, converged=converged, flips_total=flips_total)
