"""Renderers for the five figure families, CSV/dataset files in, PNG out.

The figure layer recomputes nothing: every panel is a direct view of the
CSV columns written by the simulation CLI. Rendering is deterministic for
a given input (fixed figure geometry, series sorted before drawing).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .spec import HERTZ_REFERENCE, FigureSpec

FIGSIZE = (8.0, 5.0)
DPI = 110


def _load_csv(spec: FigureSpec, required: list[str]) -> pd.DataFrame:
    frames = []
    for path in spec.inputs:
        frame = pd.read_csv(path)
        for column in required:
            if column not in frame.columns:
                raise ValueError(f"column {column!r} missing from {path} (found: {list(frame.columns)})")
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def _check_column(frame_columns, column: str, path_hint: str) -> None:
    if column not in frame_columns:
        raise ValueError(f"column {column!r} missing from {path_hint} (found: {list(frame_columns)})")


def _finish(fig, spec: FigureSpec) -> str:
    fig.savefig(spec.out, dpi=DPI)
    plt.close(fig)
    return spec.out


def _theory_curve(spec: FigureSpec):
    frame = _load_csv(spec, ["ratio", "subset_size", "p", "p_error"])
    hue = spec.hue or "subset_size"
    _check_column(frame.columns, hue, ", ".join(spec.inputs))
    fig, ax = plt.subplots(figsize=FIGSIZE)
    other = "p" if hue == "subset_size" else "subset_size"
    for (hue_value, other_value), group in sorted(frame.groupby([hue, other], sort=True).groups.items()):
        rows = frame.loc[group].sort_values("ratio")
        label = f"{hue}={hue_value}" + (f", {other}={other_value}" if frame[other].nunique() > 1 else "")
        ax.plot(rows["ratio"], rows["p_error"], label=label)
    ax.axhline(HERTZ_REFERENCE, color="black", linestyle="--", linewidth=1,
               label=f"reference {HERTZ_REFERENCE}")
    ax.set_xlabel("K / N")
    ax.set_ylabel("error probability")
    ax.set_yscale("log")
    if len(frame):
        ax.legend(fontsize=8)
    ax.set_title("Representative-state error probability vs load")
    return fig


def _recall_panels(spec: FigureSpec, value_column: str, ylabel: str):
    frame = _load_csv(spec, ["examples", "rank", "seed", value_column])
    hue = spec.hue or "p"
    facet = spec.facet
    if facet is None and "confounders" in frame.columns and frame["confounders"].nunique() > 1:
        facet = "confounders"
    _check_column(frame.columns, hue, ", ".join(spec.inputs))
    if facet is not None:
        _check_column(frame.columns, facet, ", ".join(spec.inputs))

    top = frame[frame["rank"] == 0]
    facet_values = sorted(top[facet].unique()) if facet is not None and len(top) else [None]
    n_panels = max(len(facet_values), 1)
    fig, axes = plt.subplots(1, n_panels, figsize=(FIGSIZE[0] * n_panels / 1.6, FIGSIZE[1]),
                             sharey=True, squeeze=False)
    for ax, facet_value in zip(axes[0], facet_values):
        panel = top if facet_value is None else top[top[facet] == facet_value]
        for hue_value, group in sorted(panel.groupby(hue, sort=True).groups.items()):
            rows = panel.loc[group]
            means = rows.groupby("examples")[value_column].mean().sort_index()
            ax.plot(means.index, means.values, marker="o", label=f"{hue}={hue_value}")
        ax.set_xlabel("examples per prototype")
        if facet_value is not None:
            ax.set_title(f"{facet}={facet_value}")
        if len(panel):
            ax.legend(fontsize=8)
    axes[0][0].set_ylabel(ylabel)
    fig.suptitle(f"{ylabel} of the most recalled state")
    return fig


def _energy_profile(spec: FigureSpec):
    frame = _load_csv(spec, ["class", "neuron_rank", "energy"])
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for state_class, group in sorted(frame.groupby("class", sort=True).groups.items()):
        rows = frame.loc[group]
        stats = rows.groupby("neuron_rank")["energy"].agg(["mean", "min", "max"]).sort_index()
        ax.plot(stats.index, stats["mean"], label=str(state_class))
        ax.fill_between(stats.index, stats["min"], stats["max"], alpha=0.2)
    ax.axhline(0.0, color="black", linewidth=1)
    ax.set_xlabel("neuron rank (sorted by energy)")
    ax.set_ylabel("per-neuron energy")
    ax.set_title("Sorted energy profiles by state class")
    if len(frame):
        ax.legend(fontsize=8)
    return fig


def _parse_dataset_states(path: str, examples_per_base: int):
    """Minimal reader for the simulator's dataset text format: returns
    (base, examples) pairs without importing the simulator."""
    with open(path) as f:
        lines = f.read().splitlines()
    if not lines or not lines[0].startswith("# hopfield-proto dataset"):
        raise ValueError(f"{path} is not a dataset file (bad header)")

    def spins(line: str) -> np.ndarray:
        return np.array([1 if tok == "+1" else -1 for tok in line.split()], dtype=np.int8)

    groups = []
    pos = 0
    while pos < len(lines):
        if lines[pos].startswith("base "):
            base = spins(lines[pos + 1])
            pos += 2
            if pos < len(lines) and lines[pos].startswith("examples "):
                pos += 1
                examples = []
                while pos < len(lines) and lines[pos] and lines[pos][0] in "+-":
                    examples.append(spins(lines[pos]))
                    pos += 1
                groups.append((base, examples[:examples_per_base]))
        else:
            pos += 1
    if not groups:
        raise ValueError(f"no base/example sections found in {path}")
    return groups


def _state_strip(spec: FigureSpec):
    examples_per_base = int(spec.options.get("examples_per_base", 4))
    groups = _parse_dataset_states(spec.inputs[0], examples_per_base)
    rows = []
    labels = []
    for g, (base, examples) in enumerate(groups):
        rows.append(base)
        labels.append(f"base {g}")
        for e, example in enumerate(examples):
            rows.append(example)
            labels.append(f"  example {e}")
    image = np.stack(rows)
    fig, ax = plt.subplots(figsize=(FIGSIZE[0], 0.28 * len(rows) + 1.2))
    ax.imshow(image, aspect="auto", interpolation="nearest", cmap="viridis", vmin=-1, vmax=1)
    ax.set_yticks(range(len(labels)), labels, fontsize=7)
    ax.set_xlabel("index")
    ax.set_title("Base vectors and noisy examples (+1 yellow, -1 purple)")
    return fig


_BUILDERS = {
    "theory-curve": _theory_curve,
    "distance": lambda spec: _recall_panels(spec, "distance", "Manhattan distance"),
    "proportion": lambda spec: _recall_panels(spec, "proportion", "recall proportion"),
    "energy-profile": _energy_profile,
    "state-strip": _state_strip,
}


def build_figure(spec: FigureSpec):
    """Build the matplotlib Figure for a spec without saving it."""
    return _BUILDERS[spec.family](spec)


def render(spec: FigureSpec) -> str:
    """Render the spec to its output path; returns the path."""
    return _finish(build_figure(spec), spec)
