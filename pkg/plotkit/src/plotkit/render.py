"""CSV-to-figure rendering: data as markers, predictor curves as lines."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "FIGURES", "load_csv", "render"]


@dataclass(frozen=True)
class FigureSpec:
    """What to draw from one CSV.

    ``y_columns`` maps column names to marker styles; ``overlay`` is the
    column drawn as a solid line (the theoretical curve); ``group_by``
    optionally splits rows into one series per distinct value of that column.
    """

    csv_path: str
    x_column: str
    y_columns: dict = field(default_factory=dict)
    overlay: str | None = None
    group_by: str | None = None
    # draw fit_c / sin^2(x) as the overlay (the fitted curve of the
    # fid-alpha-sweep CSVs) instead of a plain column
    fit_inverse_sin_sq: bool = False
    title: str = ""
    x_label: str = ""
    y_label: str = ""


def load_csv(path: str) -> dict:
    """Parse an experiment CSV into {column: float array}, skipping comments."""
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows or len(rows) < 2:
        raise ValueError(f"{path}: no data rows")
    header = rows[0]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return {name: data[:, i] for i, name in enumerate(header)}


def render(spec: FigureSpec, out_path: str) -> str:
    """Draw the figure and write it to out_path; returns out_path."""
    table = load_csv(spec.csv_path)
    wanted = [spec.x_column, *spec.y_columns]
    if spec.overlay:
        wanted.append(spec.overlay)
    if spec.fit_inverse_sin_sq:
        wanted.append("fit_c")
    if spec.group_by:
        wanted.append(spec.group_by)
    for col in wanted:
        if col not in table:
            raise ValueError(
                f"{spec.csv_path}: missing column {col!r} (have {sorted(table)})"
            )

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if spec.group_by:
        groups = [(f"{spec.group_by}={g:g}", table[spec.group_by] == g)
                  for g in np.unique(table[spec.group_by])]
    else:
        groups = [("", np.ones(len(table[spec.x_column]), dtype=bool))]
    for label, mask in groups:
        x = table[spec.x_column][mask]
        order = np.argsort(x)
        for col, marker in spec.y_columns.items():
            name = f"{col} ({label})" if label else col
            ax.plot(x[order], table[col][mask][order], marker, label=name,
                    markerfacecolor="none")
        if spec.overlay:
            ax.plot(x[order], table[spec.overlay][mask][order], "-",
                    color="tab:red", label=spec.overlay if not label else None)
        if spec.fit_inverse_sin_sq:
            xs = np.linspace(x.min(), x.max(), 200)
            C = table["fit_c"][mask][0]
            ax.plot(xs, C / np.sin(xs) ** 2, "-", color="tab:red",
                    label="fit_c / sin^2")
    ax.set_xlabel(spec.x_label or spec.x_column)
    ax.set_ylabel(spec.y_label or "")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def _spec(**kw):
    return lambda csv_path: FigureSpec(csv_path=csv_path, **kw)


# Figure number -> spec builder; the CSVs come from the matching lagfid
# commands (noted per entry).
FIGURES = {
    # trace-ortho
    2: _spec(x_column="k", y_columns={"k_trace": "o"}, overlay="predictor",
             title="Rescaled trace, orthogonal great circles"),
    # trace-angle
    3: _spec(x_column="k", y_columns={"k_trace": "o"}, overlay="predictor",
             title="Rescaled trace, tilted great circles"),
    # subfid-ortho
    4: _spec(x_column="k", y_columns={"k_subfid": "o"}, overlay="predictor",
             title="Rescaled sub-fidelity, orthogonal great circles"),
    # subfid-alpha-sweep
    5: _spec(x_column="alpha", y_columns={"k_subfid": "o"}, overlay="predictor",
             title="Rescaled sub-fidelity vs tilt angle"),
    # fid-bto-compare
    6: _spec(x_column="k", y_columns={"k_fid": "o", "k_bound": "s"}, group_by="c",
             title="Rescaled fidelity vs operator upper bound"),
    # fid-bto-compare at another angle
    7: _spec(x_column="k", y_columns={"k_fid": "o", "k_bound": "s"}, group_by="c",
             title="Rescaled fidelity vs operator upper bound"),
    # fid-vs-subfid
    8: _spec(x_column="k", y_columns={"k_fid": "o", "k_subfid": "^"},
             overlay="subfid_predictor",
             title="Rescaled fidelity and sub-fidelity"),
    # fid-alpha-sweep
    9: _spec(x_column="alpha", y_columns={"k_fid": "o"}, fit_inverse_sin_sq=True,
             title="Rescaled fidelity vs tilt angle, with 1/sin^2 fit"),
    # purity-check
    10: _spec(x_column="k", y_columns={"scaled_purity": "o"}, overlay="predictor",
              title="Scaled purity of the equator state"),
    # trace-norm-check
    11: _spec(x_column="k", y_columns={"numeric": "o", "predictor": "s"},
              title="Trace of the geometric-mean symbol vs stationary phase"),
    # fid-vs-subfid at another angle
    12: _spec(x_column="k", y_columns={"k_fid": "o", "k_subfid": "^"},
              overlay="subfid_predictor",
              title="Rescaled fidelity and sub-fidelity"),
}


def figure_spec(number: int, csv_path: str) -> FigureSpec:
    """Default spec for one of the standard figures."""
    if number not in FIGURES:
        raise ValueError(f"unknown figure {number}; choose from {sorted(FIGURES)}")
    return FIGURES[number](csv_path)
