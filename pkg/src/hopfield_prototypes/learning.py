"""Hebbian construction of the weight matrix, batch and incremental."""

from __future__ import annotations

import numpy as np

from .network import as_state

__all__ = ["as_training_set", "hebbian", "hebbian_accumulate"]


def as_training_set(states) -> np.ndarray:
    """Validate a set of K states of common dimension N; returns a K x N int8 array."""
    if isinstance(states, np.ndarray) and states.ndim == 2:
        ts = states
    else:
        rows = [as_state(s) for s in states]
        if not rows:
            raise ValueError("training set must contain at least one state")
        lengths = {r.shape[0] for r in rows}
        if len(lengths) != 1:
            raise ValueError(f"training states have mixed dimensions: {sorted(lengths)}")
        ts = np.stack(rows)
    if ts.shape[0] == 0 or ts.shape[1] == 0:
        raise ValueError(f"training set must be non-empty, got shape {ts.shape}")
    ts = ts.astype(np.int8, copy=False)
    if not np.all((ts == 1) | (ts == -1)):
        raise ValueError("training states must have entries in {-1, +1}")
    return ts


def hebbian(states) -> np.ndarray:
    """Mean of outer products over the training set, diagonal forced to zero.

    w[j, i] = (1/K) * sum_k s^k_j * s^k_i for j != i. The sum runs in int64
    so the mean is exact up to the single final division.
    """
    ts = as_training_set(states)
    k = ts.shape[0]
    gram = ts.astype(np.int64).T @ ts.astype(np.int64)
    w = gram / float(k)
    np.fill_diagonal(w, 0.0)
    return w


def hebbian_accumulate(w: np.ndarray, k_so_far: int, new_state) -> tuple[np.ndarray, int]:
    """Fold one more state into a running Hebbian mean.

    Given w consistent with a Hebbian mean over k_so_far states, returns the
    mean over k_so_far + 1 states. Agrees with the batch rule to ~1e-15 per
    entry regardless of presentation order.
    """
    if k_so_far < 0:
        raise ValueError(f"k_so_far must be non-negative, got {k_so_far}")
    s = as_state(new_state)
    n = s.shape[0]
    if k_so_far == 0:
        w = np.zeros((n, n))
    elif w.shape != (n, n):
        raise ValueError(f"dimension mismatch: weights are {w.shape}, state has N={n}")
    outer = np.outer(s, s).astype(np.float64)
    k_new = k_so_far + 1
    w_new = (w * float(k_so_far) + outer) / float(k_new)
    np.fill_diagonal(w_new, 0.0)
    return w_new, k_new
