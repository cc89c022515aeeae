import numpy as np
import pytest

from hopfield_prototypes import io
from hopfield_prototypes.cli import main


def run(args, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return main(args)


class TestCapacity:
    def test_hertz_point(self, capsys, tmp_path, monkeypatch):
        assert run(["capacity", "--subset-size", "1", "--p", "0", "--target", "0.0036"],
                   tmp_path, monkeypatch) == 0
        out = capsys.readouterr().out.strip()
        assert abs(float(out) - 0.138) <= 1e-3

    def test_bad_target_errors(self, capsys, tmp_path, monkeypatch):
        assert run(["capacity", "--target", "0.9"], tmp_path, monkeypatch) == 1
        assert "error:" in capsys.readouterr().err


class TestTheoryCurve:
    def test_single_point(self, tmp_path, monkeypatch):
        assert run(["theory-curve", "--subset-sizes", "2", "--ps", "0.1",
                    "--ratios", "0.5", "--out", "t.csv"], tmp_path, monkeypatch) == 0
        lines = (tmp_path / "t.csv").read_text().splitlines()
        assert len(lines) == 2
        assert (tmp_path / "t.csv.config.json").exists()


class TestFilePipeline:
    def test_generate_train_probe(self, tmp_path, monkeypatch):
        assert run(["generate", "--n", "30", "--prototypes", "1", "--examples", "6",
                    "--p", "0.1", "--seed", "3", "--out", "ds.txt"], tmp_path, monkeypatch) == 0
        assert run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch) == 0
        assert run(["probe", "--weights", "w.txt", "--dataset", "ds.txt", "--count", "100",
                    "--seed", "1", "--out", "census.csv"], tmp_path, monkeypatch) == 0
        lines = (tmp_path / "census.csv").read_text().splitlines()
        assert lines[0] == "rank,count,proportion,unconverged,state"
        assert len(lines) >= 2

    def test_probe_with_states_file(self, tmp_path, monkeypatch):
        run(["generate", "--n", "20", "--examples", "4", "--p", "0.0", "--seed", "2",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        ds = io.read_dataset((tmp_path / "ds.txt").as_posix())
        io.write_states((tmp_path / "probes.txt").as_posix(), np.stack([ds.bases[0]] * 5))
        assert run(["probe", "--weights", "w.txt", "--probes-file", "probes.txt",
                    "--out", "census.csv"], tmp_path, monkeypatch) == 0
        body = (tmp_path / "census.csv").read_text().splitlines()
        assert body[1].split(",")[1] == "5"

    def test_weight_file_matches_recomputed_hebbian(self, tmp_path, monkeypatch):
        from hopfield_prototypes.learning import hebbian

        run(["generate", "--n", "16", "--examples", "3", "--p", "0.2", "--seed", "8",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        ds = io.read_dataset((tmp_path / "ds.txt").as_posix())
        assert np.array_equal(io.read_weights((tmp_path / "w.txt").as_posix()),
                              hebbian(ds.training_states()))


class TestExperiment:
    def test_repeat_runs_are_byte_identical(self, tmp_path, monkeypatch):
        args = ["experiment", "--n", "60", "--prototypes", "1", "--examples", "10",
                "--p", "0.1", "--seed", "5", "--probes", "300", "--out", "a.csv",
                "--profiles-out", "pa.csv"]
        assert run(args, tmp_path, monkeypatch) == 0
        first = (tmp_path / "a.csv").read_bytes()
        first_prof = (tmp_path / "pa.csv").read_bytes()
        args[-3] = "b.csv"
        args[-1] = "pb.csv"
        assert run(args, tmp_path, monkeypatch) == 0
        assert (tmp_path / "b.csv").read_bytes() == first
        assert (tmp_path / "pb.csv").read_bytes() == first_prof

    def test_scale_switch_sets_probe_count(self, tmp_path, monkeypatch):
        import json

        assert run(["experiment", "--n", "30", "--examples", "6", "--p", "0.1",
                    "--probes", "120", "--out", "e.csv"], tmp_path, monkeypatch) == 0
        cfg = json.loads((tmp_path / "e.csv.config.json").read_text())
        assert cfg["probes_total"] == 120
        assert cfg["scale"] == "desk"


class TestGrid:
    def test_incremental_rows_and_errors(self, tmp_path, monkeypatch, capsys):
        assert run(["grid", "--n-values", "30", "--example-values", "4", "8",
                    "--p-values", "0.1", "--probes", "60", "--out", "g.csv"],
                   tmp_path, monkeypatch) == 0
        lines = (tmp_path / "g.csv").read_text().splitlines()
        assert lines[0] == ",".join(io.EXPERIMENT_COLUMNS)
        assert len(lines) == 3


class TestEnumerate:
    def test_small_network(self, tmp_path, monkeypatch):
        run(["generate", "--n", "10", "--examples", "1", "--p", "0.0", "--seed", "4",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        assert run(["enumerate", "--weights", "w.txt", "--out", "stable.txt"],
                   tmp_path, monkeypatch) == 0
        stable = io.read_states((tmp_path / "stable.txt").as_posix())
        assert stable.shape[0] == 2  # single learned state plus its negation

    def test_too_large_errors(self, tmp_path, monkeypatch, capsys):
        run(["generate", "--n", "25", "--examples", "1", "--p", "0.0", "--seed", "4",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        assert run(["enumerate", "--weights", "w.txt", "--out", "s.txt"],
                   tmp_path, monkeypatch) == 1
        assert "error:" in capsys.readouterr().err


class TestProfileCommand:
    def test_labeled_profiles(self, tmp_path, monkeypatch):
        run(["generate", "--n", "12", "--examples", "2", "--p", "0.0", "--seed", "6",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        ds = io.read_dataset((tmp_path / "ds.txt").as_posix())
        io.write_states((tmp_path / "learned.txt").as_posix(), ds.training_states())
        assert run(["profile", "--weights", "w.txt", "--states", "learned=learned.txt",
                    "--out", "p.csv"], tmp_path, monkeypatch) == 0
        lines = (tmp_path / "p.csv").read_text().splitlines()
        assert lines[0] == "class,neuron_rank,energy"
        assert lines[1].startswith("learned,0,")

    def test_bad_spec_errors(self, tmp_path, monkeypatch, capsys):
        run(["generate", "--n", "12", "--examples", "2", "--p", "0.0", "--seed", "6",
             "--out", "ds.txt"], tmp_path, monkeypatch)
        run(["train", "--dataset", "ds.txt", "--out", "w.txt"], tmp_path, monkeypatch)
        assert run(["profile", "--weights", "w.txt", "--states", "nolabel",
                    "--out", "p.csv"], tmp_path, monkeypatch) == 1


class TestErrorPaths:
    def test_unknown_flag_exits_nonzero(self, tmp_path, monkeypatch):
        with pytest.raises(SystemExit) as info:
            run(["capacity", "--target", "0.01", "--bogus"], tmp_path, monkeypatch)
        assert info.value.code == 2

    def test_missing_file_reports_one_line(self, tmp_path, monkeypatch, capsys):
        assert run(["train", "--dataset", "missing.txt", "--out", "w.txt"],
                   tmp_path, monkeypatch) == 1
        err = capsys.readouterr().err
        assert err.startswith("error:") and err.count("\n") == 1

    def test_outdir_env_redirects_relative_outputs(self, tmp_path, monkeypatch):
        outdir = tmp_path / "results"
        monkeypatch.setenv(io.OUTDIR_ENV, outdir.as_posix())
        assert run(["theory-curve", "--ratios", "1.0", "--out", "t.csv"],
                   tmp_path, monkeypatch) == 0
        assert (outdir / "t.csv").exists()
