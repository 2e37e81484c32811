import numpy as np
import pytest

from lagfid.cli import build_parser, fit_inverse_sin_sq, main, resolve_config


def run_cli(args):
    return main(args)


def read_csv(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    header = next(l for l in lines if not l.startswith("#"))
    data = np.genfromtxt(path, delimiter=",", skip_header=len(comments) + 1)
    return comments, header.split(","), np.atleast_2d(data)


class TestFit:
    def test_exact_model(self):
        alphas = [0.3, 0.7, np.pi / 2]
        rows = [(a, 3 / np.sin(a) ** 2) for a in alphas]
        C, residuals = fit_inverse_sin_sq(rows)
        assert C == pytest.approx(3.0)
        assert np.allclose(residuals, 0.0, atol=1e-12)

    def test_constant_rows_expose_wrong_model(self):
        alphas = [0.5, 1.0, np.pi / 2]
        rows = [(a, 5.0) for a in alphas]
        C, residuals = fit_inverse_sin_sq(rows)
        assert C == pytest.approx(5.0)
        expected = [5 * (np.sin(a) ** 2 - 1) for a in alphas]
        assert np.allclose(residuals, expected)

    def test_missing_anchor_row(self):
        with pytest.raises(ValueError, match="pi/2"):
            fit_inverse_sin_sq([(0.5, 1.0)])


class TestConfig:
    def test_defaults_applied(self):
        args = build_parser().parse_args(["--command", "trace-ortho"])
        cfg = resolve_config(args)
        assert cfg["k_min"] == 1 and cfg["k_max"] == 50 and cfg["k_step"] == 1
        assert cfg["out"] == "trace-ortho.csv"

    def test_k_guard(self):
        args = build_parser().parse_args(["--command", "trace-ortho", "--k-max", "5000"])
        with pytest.raises(SystemExit) as exc:
            resolve_config(args)
        assert exc.value.code == 1

    def test_alpha_guard(self):
        args = build_parser().parse_args(["--command", "trace-angle", "--alpha", "0.01"])
        with pytest.raises(SystemExit) as exc:
            resolve_config(args)
        assert exc.value.code == 1

    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["--command", "nope"])
        assert exc.value.code == 1


class TestCommands:
    def test_trace_ortho(self, tmp_path):
        out = tmp_path / "t.csv"
        assert run_cli(["--command", "trace-ortho", "--k-max", "12", "--out", str(out)]) == 0
        comments, header, data = read_csv(out)
        assert header == ["k", "alpha", "k_trace", "predictor"]
        assert any("lagfid" in c for c in comments)
        assert any("command=trace-ortho" in c for c in comments)
        assert data.shape == (12, 4)
        assert np.allclose(data[:, 3], 2 / np.pi)

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(["--command", "subfid-ortho", "--k-max", "8", "--out", str(a)])
        run_cli(["--command", "subfid-ortho", "--k-max", "8", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_trace_angle_predictor(self, tmp_path):
        out = tmp_path / "ta.csv"
        run_cli(
            ["--command", "trace-angle", "--alpha", "0.7853981633974483",
             "--k-min", "40", "--k-max", "40", "--out", str(out)]
        )
        _, header, data = read_csv(out)
        assert data[0, header.index("predictor")] == pytest.approx(2 * np.sqrt(2) / np.pi)

    def test_egorov_check_passes(self, tmp_path):
        out = tmp_path / "e.csv"
        code = run_cli(
            ["--command", "egorov-check", "--k-min", "10", "--k-max", "20",
             "--k-step", "10", "--c", "2", "--out", str(out)]
        )
        assert code == 0
        _, header, data = read_csv(out)
        assert data[:, header.index("residual")].max() < 1e-6

    def test_bound_chain_passes(self, tmp_path):
        out = tmp_path / "b.csv"
        code = run_cli(
            ["--command", "bound-chain", "--k-min", "10", "--k-max", "20",
             "--k-step", "10", "--c", "2", "--out", str(out)]
        )
        assert code == 0
        _, header, data = read_csv(out)
        assert data[:, header.index("margin")].min() >= -1e-9

    def test_fid_alpha_sweep_fit(self, tmp_path):
        out = tmp_path / "f.csv"
        code = run_cli(
            ["--command", "fid-alpha-sweep", "--k-max", "30",
             "--alpha-grid", f"0.5:{np.pi / 2}:4", "--out", str(out)]
        )
        assert code == 0
        _, header, data = read_csv(out)
        i = header.index("residual")
        # the pi/2 anchor row has residual exactly 0
        assert data[-1, i] == 0.0

    def test_purity_check(self, tmp_path):
        out = tmp_path / "p.csv"
        run_cli(["--command", "purity-check", "--k-min", "100", "--k-max", "100", "--out", str(out)])
        _, header, data = read_csv(out)
        assert data[0, header.index("scaled_purity")] == pytest.approx(1.0, abs=0.02)

    def test_unwritable_path(self, tmp_path):
        code = run_cli(
            ["--command", "trace-ortho", "--k-max", "2", "--out", "/nonexistent/dir/x.csv"]
        )
        assert code == 1

    def test_threads_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LAGFID_THREADS", "2")
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_cli(["--command", "trace-ortho", "--k-max", "10", "--out", str(a)])
        monkeypatch.setenv("LAGFID_THREADS", "1")
        run_cli(["--command", "trace-ortho", "--k-max", "10", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
