import numpy as np
import pytest

from plotkit import FigureSpec, load_csv, render
from plotkit.cli import main
from plotkit.render import figure_spec


def write_csv(path, header, rows, comments=("# lagfid 0.1.0",)):
    with open(path, "w") as fh:
        for c in comments:
            fh.write(c + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
    return str(path)


@pytest.fixture
def trace_csv(tmp_path):
    ks = np.arange(1, 21)
    rows = [[k, np.pi / 2, 2 / np.pi * (1 - 1 / k), 2 / np.pi] for k in ks]
    return write_csv(tmp_path / "trace.csv", ["k", "alpha", "k_trace", "predictor"], rows)


@pytest.fixture
def alpha_sweep_csv(tmp_path):
    alphas = np.linspace(0.3, np.pi / 2, 10)
    rows = [[a, 200, 3.15 / np.sin(a) ** 2, 3.15, 0.0] for a in alphas]
    return write_csv(
        tmp_path / "fa.csv", ["alpha", "k", "k_fid", "fit_c", "residual"], rows
    )


@pytest.fixture
def bto_csv(tmp_path):
    rows = []
    for c in (2.0, 10.0):
        for k in range(10, 61, 10):
            rows.append([k, np.pi / 2, c, 3.0 + 1 / k, 3.5 + c / k, 0.1])
    return write_csv(
        tmp_path / "bto.csv", ["k", "alpha", "c", "k_fid", "k_bound", "margin"], rows
    )


@pytest.fixture
def subfid_alpha_csv(tmp_path):
    alphas = np.linspace(0.3, np.pi / 2, 10)
    rows = [[a, 200, 1.36 / np.sin(a), 1.37 / np.sin(a)] for a in alphas]
    return write_csv(
        tmp_path / "sa.csv", ["alpha", "k", "k_subfid", "predictor"], rows
    )


class TestLoadCsv:
    def test_parses_columns(self, trace_csv):
        table = load_csv(trace_csv)
        assert set(table) == {"k", "alpha", "k_trace", "predictor"}
        assert len(table["k"]) == 20

    def test_empty_csv_rejected(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("# comment only\n")
        with pytest.raises(ValueError, match="no data"):
            load_csv(str(p))


class TestRender:
    def test_figure_2(self, trace_csv, tmp_path):
        out = render(figure_spec(2, trace_csv), str(tmp_path / "fig2.png"))
        assert (tmp_path / "fig2.png").stat().st_size > 0
        assert out.endswith("fig2.png")

    def test_figure_5(self, subfid_alpha_csv, tmp_path):
        render(figure_spec(5, subfid_alpha_csv), str(tmp_path / "fig5.png"))
        assert (tmp_path / "fig5.png").stat().st_size > 0

    def test_figure_6_grouped(self, bto_csv, tmp_path):
        render(figure_spec(6, bto_csv), str(tmp_path / "fig6.png"))
        assert (tmp_path / "fig6.png").stat().st_size > 0

    def test_figure_9_fit_overlay(self, alpha_sweep_csv, tmp_path):
        render(figure_spec(9, alpha_sweep_csv), str(tmp_path / "fig9.png"))
        assert (tmp_path / "fig9.png").stat().st_size > 0

    def test_missing_column_named(self, trace_csv, tmp_path):
        spec = FigureSpec(csv_path=trace_csv, x_column="k", y_columns={"nope": "o"})
        with pytest.raises(ValueError, match="nope"):
            render(spec, str(tmp_path / "x.png"))
        assert not (tmp_path / "x.png").exists()

    def test_empty_csv_writes_nothing(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("k,k_trace,predictor\n")
        with pytest.raises(ValueError):
            render(figure_spec(2, str(p)), str(tmp_path / "x.png"))
        assert not (tmp_path / "x.png").exists()

    def test_deterministic_output(self, trace_csv, tmp_path):
        a = render(figure_spec(2, trace_csv), str(tmp_path / "a.png"))
        b = render(figure_spec(2, trace_csv), str(tmp_path / "b.png"))
        assert open(a, "rb").read() == open(b, "rb").read()


class TestCli:
    def test_render_command(self, trace_csv, tmp_path):
        out = tmp_path / "f.png"
        assert main(["render", "--csv", trace_csv, "--figure", "2", "--out", str(out)]) == 0
        assert out.stat().st_size > 0

    def test_bad_figure(self, trace_csv, tmp_path):
        with pytest.raises(SystemExit):
            main(["render", "--csv", trace_csv, "--figure", "99", "--out", "x.png"])

    def test_missing_column_exit_code(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("a,b\n1,2\n")
        assert main(["render", "--csv", str(p), "--figure", "2", "--out", str(tmp_path / "x.png")]) == 1


@pytest.mark.slow
class TestEndToEnd:
    """Render from CSVs produced by the lagfid CLI, when it is installed."""

    def test_figures_from_real_csvs(self, tmp_path):
        lagfid_cli = pytest.importorskip("lagfid.cli")
        csvs = {}
        for fig, argv in {
            2: ["--command", "trace-ortho", "--k-max", "20"],
            5: ["--command", "subfid-alpha-sweep", "--k-max", "40",
                "--alpha-grid", f"0.3:{np.pi / 2}:6"],
            6: ["--command", "fid-bto-compare", "--k-min", "10", "--k-max", "30",
                "--k-step", "10", "--c", "2"],
            9: ["--command", "fid-alpha-sweep", "--k-max", "30",
                "--alpha-grid", f"0.3:{np.pi / 2}:6"],
        }.items():
            out = tmp_path / f"cmd{fig}.csv"
            assert lagfid_cli.main(argv + ["--out", str(out)]) == 0
            csvs[fig] = str(out)
        for fig, path in csvs.items():
            png = tmp_path / f"fig{fig}.png"
            render(figure_spec(fig, path), str(png))
            assert png.stat().st_size > 0
