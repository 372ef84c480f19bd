import json

import pytest

from tweetsent import cli, metrics

REPORT_KEYS = {"accuracy", "precision", "recall", "f1", "degenerate_flags",
               "confusion"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def train_lr(capsys, data, out_dir, sample=400, seed=7, extra=()):
    return run(capsys, "train", "--model", "lr", "--data", str(data),
               "--sample", str(sample), "--seed", str(seed),
               "--max-iters", "200", "--out", str(out_dir), *extra)


class TestTrainEvaluate:
    def test_lr_round_trip(self, synth_csv_small, tmp_path, capsys):
        code, out = train_lr(capsys, synth_csv_small, tmp_path / "art")
        assert code == 0
        report = json.loads(out)
        assert set(report) == REPORT_KEYS
        assert sum(report["confusion"].values()) == 120  # 400 * 0.3
        assert (tmp_path / "art" / "lr.manifest.json").exists()
        assert (tmp_path / "art" / "lr.weights.bin").exists()

        manifest = json.loads((tmp_path / "art" / "lr.manifest.json").read_text())
        cfg = manifest["config"]
        assert cfg["seed"] == 7
        assert cfg["sample_size"] == 400
        assert cfg["train_fraction"] == 0.7
        assert cfg["test_accuracy"] == report["accuracy"]

        code, out = run(capsys, "evaluate",
                        "--artifact", str(tmp_path / "art" / "lr"),
                        "--data", str(synth_csv_small),
                        "--sample", "400", "--seed", "7")
        assert code == 0
        assert json.loads(out)["accuracy"] == report["accuracy"]

    def test_bilstm_round_trip(self, synth_csv_small, tmp_path, capsys):
        code, out = run(capsys, "train", "--model", "bilstm",
                        "--data", str(synth_csv_small),
                        "--sample", "200", "--seed", "5",
                        "--emb-dim", "8", "--hidden", "8", "--epochs", "2",
                        "--batch-size", "32", "--max-len", "20",
                        "--out", str(tmp_path / "art"))
        assert code == 0
        report = json.loads(out)
        assert set(report) == REPORT_KEYS
        for name in ("bilstm.manifest.json", "bilstm.weights.bin",
                     "vocab.json"):
            assert (tmp_path / "art" / name).exists(), name

        code, out = run(capsys, "evaluate",
                        "--artifact", str(tmp_path / "art" / "bilstm"),
                        "--data", str(synth_csv_small),
                        "--sample", "200", "--seed", "5")
        assert code == 0
        assert json.loads(out)["accuracy"] == report["accuracy"]

    def test_two_runs_bit_identical(self, synth_csv_small, tmp_path, capsys,
                                    monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        code_a, _ = train_lr(capsys, synth_csv_small, tmp_path / "a")
        code_b, _ = train_lr(capsys, synth_csv_small, tmp_path / "b")
        assert code_a == code_b == 0
        for name in ("lr.manifest.json", "lr.weights.bin"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes(), name


class TestCurve:
    def test_bilstm_epoch_curve(self, synth_csv_small, tmp_path, capsys):
        out_csv = tmp_path / "dl.csv"
        code, out = run(capsys, "curve", "--model", "bilstm",
                        "--data", str(synth_csv_small),
                        "--sample", "200", "--seed", "5",
                        "--emb-dim", "8", "--hidden", "8", "--epochs", "3",
                        "--batch-size", "32", "--max-len", "20",
                        "--out", str(out_csv))
        assert code == 0
        summary = json.loads(out)
        assert summary == {"kind": "by_epoch", "points": 3,
                           "csv": str(out_csv)}
        curve = metrics.read_curve_csv(out_csv)
        assert [p.x for p in curve.points] == [1, 2, 3]

    def test_lr_curve_needs_enough_data(self, synth_csv_small, tmp_path,
                                        capsys):
        # default sizes reach 7,000 but this sample's training split is 280
        code, _ = run(capsys, "curve", "--model", "lr",
                      "--data", str(synth_csv_small), "--sample", "400",
                      "--out", str(tmp_path / "ml.csv"))
        assert code == 2


class TestExitCodes:
    def test_usage_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["train", "--bogus"])
        assert exc.value.code == 1

    def test_usage_missing_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["train", "--model", "lr"])  # no --data
        assert exc.value.code == 1

    def test_usage_no_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 1

    def test_data_missing_file(self, tmp_path, capsys):
        code, _ = run(capsys, "train", "--model", "lr",
                      "--data", str(tmp_path / "nope.csv"))
        assert code == 2

    def test_data_oversample(self, synth_csv_small, capsys):
        code, _ = run(capsys, "train", "--model", "lr",
                      "--data", str(synth_csv_small), "--sample", "100000")
        assert code == 2

    def test_store_error_on_corrupt_artifact(self, synth_csv_small, tmp_path,
                                             capsys):
        code, _ = train_lr(capsys, synth_csv_small, tmp_path / "art")
        assert code == 0
        payload = tmp_path / "art" / "lr.weights.bin"
        payload.write_bytes(payload.read_bytes()[:-4])
        code, _ = run(capsys, "evaluate",
                      "--artifact", str(tmp_path / "art" / "lr"),
                      "--data", str(synth_csv_small), "--sample", "400",
                      "--seed", "7")
        assert code == 3

    def test_store_error_on_absent_artifact(self, synth_csv_small, tmp_path,
                                            capsys):
        code, _ = run(capsys, "evaluate",
                      "--artifact", str(tmp_path / "ghost"),
                      "--data", str(synth_csv_small), "--sample", "400")
        assert code == 3

    def test_serve_requires_artifacts(self, capsys):
        code, _ = run(capsys, "serve")
        assert code == 1

    def test_serve_rejects_bad_listen(self, tmp_path, capsys):
        code, _ = run(capsys, "serve", "--lr-artifact", str(tmp_path / "x"),
                      "--listen", "nohost")
        assert code == 1

    def test_serve_store_error(self, tmp_path, capsys):
        code, _ = run(capsys, "serve",
                      "--lr-artifact", str(tmp_path / "missing"),
                      "--listen", "127.0.0.1:8111")
        assert code == 3


class TestEnvOverrides:
    def test_env_supplies_flag(self, synth_csv_small, tmp_path, capsys,
                               monkeypatch):
        monkeypatch.setenv("TWEETSENT_DATA", str(synth_csv_small))
        monkeypatch.setenv("TWEETSENT_SAMPLE", "300")
        code, out = run(capsys, "train", "--model", "lr",
                        "--max-iters", "100", "--out", str(tmp_path / "art"))
        assert code == 0
        assert sum(json.loads(out)["confusion"].values()) == 90  # 300 * 0.3

    def test_flag_beats_env(self, synth_csv_small, tmp_path, capsys,
                            monkeypatch):
        monkeypatch.setenv("TWEETSENT_SAMPLE", "300")
        code, out = train_lr(capsys, synth_csv_small, tmp_path / "art",
                             sample=200)
        assert code == 0
        assert sum(json.loads(out)["confusion"].values()) == 60  # 200 * 0.3


class TestHelp:
    def test_help_exits_zero_and_shows_defaults(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["train", "--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        assert "--train-frac" in out
        assert "default: 0.7" in " ".join(out.split())

    def test_top_level_help_lists_commands(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for command in ("train", "evaluate", "curve", "serve"):
            assert command in out
