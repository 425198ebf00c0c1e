"""End-to-end tests of the command-line interface and its exit statuses."""

import numpy as np
import pytest

from ratenoise.cli import main
from ratenoise.io import read_columns_csv, read_signal, read_wav


def run_cli(*args):
    return main([str(a) for a in args])


class TestGenNoise:
    def test_wav_frame_count(self, tmp_path, capsys):
        out = tmp_path / "n.wav"
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 1, "--amplitude", 1,
            "--ref-rate", 44100, "--seed", 7, "-o", out,
        )
        assert code == 0
        assert len(read_wav(out)) == 44100
        stats = dict(
            line.split("=", 1) for line in capsys.readouterr().out.strip().splitlines()
        )
        assert float(stats["stddev"]) == pytest.approx(1.0)

    def test_printed_stddev_halves_at_quarter_rate(self, tmp_path, capsys):
        code = run_cli(
            "gen-noise", "--sample-rate", 11025, "--duration", 1, "--amplitude", 1,
            "--ref-rate", 44100, "--seed", 7, "-o", tmp_path / "n.wav",
        )
        assert code == 0
        stats = dict(
            line.split("=", 1) for line in capsys.readouterr().out.strip().splitlines()
        )
        assert float(stats["stddev"]) == pytest.approx(0.5)

    def test_vsd_flag(self, tmp_path, capsys):
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 0.1, "--vsd", 0.00467,
            "-o", tmp_path / "n.csv",
        )
        assert code == 0
        stats = dict(
            line.split("=", 1) for line in capsys.readouterr().out.strip().splitlines()
        )
        assert float(stats["stddev"]) == pytest.approx(0.980, abs=0.01)
        assert float(stats["vsd"]) == pytest.approx(0.00467)

    def test_conflicting_amplitude_flags_usage_error(self, tmp_path, capsys):
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 0.1, "--vsd", 0.001,
            "--amplitude", 1, "--ref-rate", 44100, "-o", tmp_path / "n.wav",
        )
        assert code == 2

    def test_missing_amplitude_flags_usage_error(self, tmp_path):
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 0.1, "-o", tmp_path / "n.wav"
        )
        assert code == 2

    def test_unwritable_path_io_error(self, tmp_path):
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 0.1, "--vsd", 0.001,
            "-o", tmp_path / "missing_dir" / "n.wav",
        )
        assert code == 3

    def test_triangular3_distribution(self, tmp_path):
        out = tmp_path / "t.csv"
        code = run_cli(
            "gen-noise", "--sample-rate", 44100, "--duration", 1, "--vsd", 0.01,
            "--distribution", "triangular3", "--seed", 5, "-o", out,
        )
        assert code == 0
        sig = read_signal(out)
        expected = 0.01 * np.sqrt(44100.0)
        assert sig.samples.std() == pytest.approx(expected, rel=0.05)


class TestProcess:
    def _gen(self, tmp_path, name="in.wav", rate=44100):
        path = tmp_path / name
        assert run_cli(
            "gen-noise", "--sample-rate", rate, "--duration", 0.5, "--vsd", 0.004,
            "--seed", 3, "-o", path,
        ) == 0
        return path

    def test_svf_stage_preserves_length(self, tmp_path):
        src = self._gen(tmp_path)
        out = tmp_path / "f.wav"
        assert run_cli("process", "-i", src, "--stage", "svf:500:5", "-o", out) == 0
        assert len(read_wav(out)) == len(read_wav(src))

    def test_stage_chain(self, tmp_path):
        src = self._gen(tmp_path)
        out = tmp_path / "c.csv"
        code = run_cli(
            "process", "-i", src, "--stage", "lowpass1:500", "--stage", "qavg:0.01",
            "-o", out,
        )
        assert code == 0
        _, y = read_columns_csv(out)
        blocks = y.reshape(-1, 441)
        assert np.all(blocks == blocks[:, :1])

    def test_quantise_holds_blocks(self, tmp_path):
        src = self._gen(tmp_path)
        out = tmp_path / "q.wav"
        assert run_cli("process", "-i", src, "--stage", "qavg:0.01", "-o", out) == 0
        sig = read_wav(out)
        blocks = sig.samples.reshape(-1, 441)
        assert np.all(blocks == blocks[:, :1])

    def test_non_integral_period_names_stage(self, tmp_path, capsys):
        src = self._gen(tmp_path)
        code = run_cli("process", "-i", src, "--stage", "qavg:0.003", "-o", tmp_path / "q.wav")
        assert code == 2
        err = capsys.readouterr().err
        assert "qavg:0.003" in err and "nearest valid periods" in err

    def test_unknown_stage_usage_error(self, tmp_path, capsys):
        src = self._gen(tmp_path)
        code = run_cli("process", "-i", src, "--stage", "flanger:3", "-o", tmp_path / "o.wav")
        assert code == 2
        assert "flanger" in capsys.readouterr().err

    def test_csv_input_accepted(self, tmp_path):
        src = self._gen(tmp_path, name="in.csv")
        out = tmp_path / "i.csv"
        assert run_cli("process", "-i", src, "--stage", "integrate", "-o", out) == 0


class TestCompare:
    def test_rate_aware_pipeline_passes(self, tmp_path, capsys):
        report = tmp_path / "r.csv"
        code = run_cli(
            "compare", "--pipeline", "noise", "--trials", 10, "--duration", 0.2,
            "--seed", 5, "-o", report, "--no-plot",
        )
        assert code == 0
        lines = report.read_text().splitlines()
        assert lines[0] == "name,value_r0,value_r1,ratio,tolerance,pass"
        assert len(lines) == 3

    def test_legacy_pipeline_fails_with_ratio_two(self, tmp_path, capsys):
        report = tmp_path / "r.csv"
        code = run_cli(
            "compare", "--pipeline", "svf", "--legacy", "--trials", 12, "--duration", 0.3,
            "--seed", 5, "-o", report, "--no-plot",
        )
        assert code == 1
        row = report.read_text().splitlines()[1].split(",")
        assert row[0] == "rms"
        assert float(row[3]) == pytest.approx(2.0, abs=0.25)
        assert row[5] == "false"

    def test_same_rate_ratios_exactly_one(self, tmp_path, capsys):
        code = run_cli(
            "compare", "--pipeline", "noise", "--r0", 22050, "--r1", 22050,
            "--trials", 10, "--duration", 0.1, "-o", tmp_path / "r.csv", "--no-plot",
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "ratio=1 " in out

    def test_non_integer_ratio_usage_error(self, tmp_path):
        code = run_cli(
            "compare", "--pipeline", "noise", "--r0", 11025, "--r1", 30000,
            "--trials", 10, "-o", tmp_path / "r.csv", "--no-plot",
        )
        assert code == 2

    def test_plot_written(self, tmp_path):
        report = tmp_path / "r.csv"
        code = run_cli(
            "compare", "--pipeline", "noise", "--trials", 10, "--duration", 0.1,
            "-o", report,
        )
        assert code == 0
        assert (tmp_path / "r.png").exists()


class TestDemoPanpipe:
    def test_two_seconds_at_44100(self, tmp_path):
        out = tmp_path / "p.wav"
        assert run_cli("demo-panpipe", "-o", out) == 0
        sig = read_wav(out, full_scale_v=2.0)
        assert len(sig) == 88200

    def test_legacy_matches_at_reference_rate_but_not_below(self, tmp_path, capsys):
        # At the 44100 Hz reference the branch normalisation makes legacy and
        # adapted renders coincide; at 11025 Hz the legacy noise branch is
        # about twice as loud.
        a = tmp_path / "a.wav"
        b = tmp_path / "b.wav"
        assert run_cli("demo-panpipe", "-o", a, "--seed", 3) == 0
        assert run_cli("demo-panpipe", "-o", b, "--seed", 3, "--legacy") == 0
        assert np.array_equal(read_wav(a).samples, read_wav(b).samples)
        capsys.readouterr()

        def branch_rms(*extra):
            assert run_cli(
                "demo-panpipe", "--sample-rate", 11025, "--seed", 3,
                "-o", tmp_path / "low.wav", *extra,
            ) == 0
            stats = dict(
                line.split("=", 1) for line in capsys.readouterr().out.strip().splitlines()
            )
            return float(stats["noise_branch_rms"])

        ratio = branch_rms("--legacy") / branch_rms()
        assert ratio == pytest.approx(2.0, abs=0.3)

    def test_rate_below_stability_bound_rejected(self, tmp_path, capsys):
        code = run_cli("demo-panpipe", "--sample-rate", 2000, "-o", tmp_path / "p.wav")
        assert code == 2
        assert "state_variable_lowpass" in capsys.readouterr().err


class TestFigure:
    def test_writes_grid_and_plot(self, tmp_path):
        code = run_cli("figure", "--out-dir", tmp_path)
        assert code == 0
        assert len(list(tmp_path.glob("*.csv"))) == 12
        assert (tmp_path / "noise_grid.png").exists()

    def test_rate_aware_variant(self, tmp_path):
        code = run_cli("figure", "--out-dir", tmp_path, "--rate-aware", "--no-plot")
        assert code == 0
        lo = read_signal(tmp_path / "noise_low.csv")
        hi = read_signal(tmp_path / "noise_high.csv")
        # Rate-aware noise is quieter at the lower rate.
        assert lo.samples.std() / hi.samples.std() == pytest.approx(0.5, rel=0.2)
