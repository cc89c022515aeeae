"""File formats: states, weights, datasets, and the CSV result schemas.

All formats are line-oriented text. States are written as +1/-1 tokens
separated by single spaces, one state per line. Weight files start with an
``N=<n>`` header followed by N rows of decimals at 17 significant digits
(lossless for float64). CSV columns:

    theory curve:  ratio,subset_size,p,p_error
    experiment:    N,n_prototypes,examples,p,confounders,seed,rank,distance,proportion,converged_fraction
    profile:       class,neuron_rank,energy
    census:        rank,count,proportion,unconverged,state

Every CSV-producing command also writes a ``<output>.config.json`` sidecar
echoing the fully resolved configuration.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict

import numpy as np

from .datagen import DatasetConfig, PrototypeDataset
from .experiments import EnergyProfile, ExperimentResult, RecallCensus, key_to_state
from .network import as_weights

__all__ = [
    "CENSUS_COLUMNS",
    "EXPERIMENT_COLUMNS",
    "PROFILE_COLUMNS",
    "THEORY_COLUMNS",
    "OUTDIR_ENV",
    "experiment_rows",
    "read_dataset",
    "read_states",
    "read_weights",
    "resolve_out_path",
    "write_census_csv",
    "write_config_sidecar",
    "write_dataset",
    "write_experiment_csv",
    "write_profile_csv",
    "write_states",
    "write_theory_csv",
    "write_weights",
]

OUTDIR_ENV = "HOPFIELD_PROTO_OUTDIR"

THEORY_COLUMNS = ["ratio", "subset_size", "p", "p_error"]
EXPERIMENT_COLUMNS = [
    "N", "n_prototypes", "examples", "p", "confounders", "seed",
    "rank", "distance", "proportion", "converged_fraction",
]
PROFILE_COLUMNS = ["class", "neuron_rank", "energy"]
CENSUS_COLUMNS = ["rank", "count", "proportion", "unconverged", "state"]


def resolve_out_path(path: str) -> str:
    """Relative paths land in $HOPFIELD_PROTO_OUTDIR when set."""
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        os.makedirs(outdir, exist_ok=True)
        return os.path.join(outdir, path)
    return path


class FormatError(ValueError):
    """Malformed input file; the message names the file, line, and field."""


def _spin_tokens(s: np.ndarray) -> str:
    return " ".join("+1" if v == 1 else "-1" for v in s)


def _parse_state_line(line: str, path: str, line_no: int) -> np.ndarray:
    values = []
    for token in line.split():
        if token == "+1":
            values.append(1)
        elif token == "-1":
            values.append(-1)
        else:
            raise FormatError(f"{path}:{line_no}: bad spin token {token!r} (expected +1 or -1)")
    if not values:
        raise FormatError(f"{path}:{line_no}: empty state line")
    return np.array(values, dtype=np.int8)


def write_states(path: str, states: np.ndarray) -> None:
    states = np.asarray(states, dtype=np.int8)
    with open(path, "w") as f:
        for s in states:
            f.write(_spin_tokens(s) + "\n")


def read_states(path: str) -> np.ndarray:
    rows = []
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            rows.append(_parse_state_line(line, path, line_no))
    if not rows:
        raise FormatError(f"{path}: no states found")
    n = rows[0].shape[0]
    for idx, r in enumerate(rows):
        if r.shape[0] != n:
            raise FormatError(f"{path}: state {idx + 1} has N={r.shape[0]}, expected {n}")
    return np.stack(rows)


def write_weights(path: str, w: np.ndarray) -> None:
    w = np.asarray(w, dtype=np.float64)
    with open(path, "w") as f:
        f.write(f"N={w.shape[0]}\n")
        for row in w:
            f.write(" ".join(format(v, ".17g") for v in row) + "\n")


def read_weights(path: str) -> np.ndarray:
    with open(path) as f:
        header = f.readline().strip()
        if not header.startswith("N="):
            raise FormatError(f"{path}:1: expected 'N=<dim>' header, got {header!r}")
        try:
            n = int(header[2:])
        except ValueError:
            raise FormatError(f"{path}:1: bad dimension in header {header!r}") from None
        rows = []
        for line_no, line in enumerate(f, 2):
            if not line.strip():
                continue
            try:
                row = [float(tok) for tok in line.split()]
            except ValueError as exc:
                raise FormatError(f"{path}:{line_no}: {exc}") from None
            if len(row) != n:
                raise FormatError(f"{path}:{line_no}: expected {n} entries, got {len(row)}")
            rows.append(row)
    if len(rows) != n:
        raise FormatError(f"{path}: expected {n} weight rows, got {len(rows)}")
    w = np.array(rows, dtype=np.float64)
    try:
        return as_weights(w)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


_DATASET_MAGIC = "# hopfield-proto dataset v1"
_CONFIG_FIELDS = [
    ("N", int),
    ("n_prototypes", int),
    ("examples_per_prototype", int),
    ("bernoulli_p", float),
    ("n_confounders", int),
    ("min_separation", float),
    ("seed", int),
]


def write_dataset(path: str, ds: PrototypeDataset) -> None:
    cfg = ds.config
    with open(path, "w") as f:
        f.write(_DATASET_MAGIC + "\n")
        for name, _ in _CONFIG_FIELDS:
            value = getattr(cfg, name)
            text = format(value, ".17g") if isinstance(value, float) else str(value)
            f.write(f"{name} {text}\n")
        for g in range(cfg.n_prototypes):
            f.write(f"base {g}\n")
            f.write(_spin_tokens(ds.bases[g]) + "\n")
            f.write(f"examples {g}\n")
            for e in range(cfg.examples_per_prototype):
                f.write(_spin_tokens(ds.examples[g, e]) + "\n")
        f.write("confounders\n")
        for c in range(cfg.n_confounders):
            f.write(_spin_tokens(ds.confounders[c]) + "\n")


def read_dataset(path: str) -> PrototypeDataset:
    with open(path) as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != _DATASET_MAGIC:
        raise FormatError(f"{path}:1: expected header {_DATASET_MAGIC!r}")
    pos = 1
    values = {}
    for name, cast in _CONFIG_FIELDS:
        if pos >= len(lines):
            raise FormatError(f"{path}: truncated before config field {name!r}")
        parts = lines[pos].split(None, 1)
        if len(parts) != 2 or parts[0] != name:
            raise FormatError(f"{path}:{pos + 1}: expected config field {name!r}, got {lines[pos]!r}")
        try:
            values[name] = cast(parts[1])
        except ValueError:
            raise FormatError(f"{path}:{pos + 1}: bad value for {name!r}: {parts[1]!r}") from None
        pos += 1
    cfg = DatasetConfig(**values)

    def expect(tag: str):
        nonlocal pos
        if pos >= len(lines) or lines[pos] != tag:
            found = lines[pos] if pos < len(lines) else "<eof>"
            raise FormatError(f"{path}:{pos + 1}: expected {tag!r}, got {found!r}")
        pos += 1

    def take_state() -> np.ndarray:
        nonlocal pos
        if pos >= len(lines):
            raise FormatError(f"{path}: truncated inside state block")
        s = _parse_state_line(lines[pos], path, pos + 1)
        if s.shape[0] != cfg.N:
            raise FormatError(f"{path}:{pos + 1}: state has N={s.shape[0]}, expected {cfg.N}")
        pos += 1
        return s

    bases = []
    examples = []
    for g in range(cfg.n_prototypes):
        expect(f"base {g}")
        bases.append(take_state())
        expect(f"examples {g}")
        examples.append([take_state() for _ in range(cfg.examples_per_prototype)])
    expect("confounders")
    confounders = [take_state() for _ in range(cfg.n_confounders)]
    if pos != len(lines):
        raise FormatError(f"{path}:{pos + 1}: trailing content after dataset")

    return PrototypeDataset(
        bases=np.stack(bases),
        examples=np.array(examples, dtype=np.int8),
        confounders=(np.stack(confounders) if confounders else np.empty((0, cfg.N), dtype=np.int8)),
        config=cfg,
    )


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_config_sidecar(out_path: str, config: dict) -> str:
    sidecar = out_path + ".config.json"
    with open(sidecar, "w") as f:
        json.dump(config, f, indent=2, sort_keys=True)
        f.write("\n")
    return sidecar


def write_theory_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(THEORY_COLUMNS)
        for r in rows:
            writer.writerow([_fmt(r.ratio), r.subset_size, _fmt(r.p), _fmt(r.p_error)])


def experiment_rows(result: ExperimentResult, seed: int | None = None) -> list[list]:
    """Flatten one experiment into CSV rows, one per census rank."""
    cfg = result.dataset_config
    seed = result.seed if seed is None else seed
    rows = []
    for rank in range(len(result.top_states)):
        rows.append([
            cfg.N,
            cfg.n_prototypes,
            cfg.examples_per_prototype,
            _fmt(cfg.bernoulli_p),
            cfg.n_confounders,
            seed,
            rank,
            result.distances[rank],
            _fmt(result.proportions[rank]),
            _fmt(result.converged_fraction),
        ])
    return rows


class ExperimentCsvWriter:
    """Incremental experiment-CSV writer; one flush per appended result."""

    def __init__(self, path: str):
        self._file = open(path, "w", newline="")
        self._writer = csv.writer(self._file)
        self._writer.writerow(EXPERIMENT_COLUMNS)
        self._file.flush()

    def append(self, result: ExperimentResult, seed: int | None = None) -> None:
        for row in experiment_rows(result, seed=seed):
            self._writer.writerow(row)
        self._file.flush()

    def close(self) -> None:
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def write_experiment_csv(path: str, results) -> None:
    with ExperimentCsvWriter(path) as out:
        for result in results:
            out.append(result)


def write_profile_csv(path: str, profiles: list[EnergyProfile]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(PROFILE_COLUMNS)
        for profile in profiles:
            for rank, energy in enumerate(profile.sorted_energies):
                writer.writerow([profile.state_class, rank, _fmt(float(energy))])


def _compact_state(s: np.ndarray) -> str:
    return "".join("+" if v == 1 else "-" for v in s)


def write_census_csv(path: str, census: RecallCensus) -> None:
    ranked = census.top(len(census.counts))
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CENSUS_COLUMNS)
        for rank, (state, count) in enumerate(ranked):
            unconverged = census.unconverged_counts.get(state.astype(np.int8).tobytes(), 0)
            writer.writerow([
                rank,
                count,
                _fmt(count / census.total_probes),
                unconverged,
                _compact_state(state),
            ])


def dataset_config_dict(cfg: DatasetConfig) -> dict:
    return asdict(cfg)
