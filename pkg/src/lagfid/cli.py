"""Command-line driver: sweeps (k, alpha, c, delta) grids and writes CSVs.

Each command reproduces one family of numerical experiments, emitting a CSV
with the input parameters, the exact numeric quantity, and the corresponding
closed-form predictor on every row.  Output is deterministic: fixed grid
order, fixed float formatting (17 significant digits), and a comment header
echoing the version and configuration.

Exit codes: 0 on success, 1 on usage errors, 2 when an acceptance-tagged
check fails its tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .asymptotics import (
    predicted_subfidelity,
    predicted_trace,
    sphere_intersection_data,
)
from .metrics import expectation, fidelity, purity, sub_fidelity
from .sphere import Level, equator_state, meridian_state, rotated_circle_state
from .toeplitz import (
    GaussianSymbolParams,
    egorov_conjugate,
    fidelity_upper_bound,
    gaussian_symbol,
    rotate_symbol,
    toeplitz_general,
    toeplitz_radial,
    trace_norm_sqrt_product,
)

__all__ = ["main", "run", "fit_inverse_sin_sq"]

COMMANDS = (
    "trace-ortho",
    "subfid-ortho",
    "trace-angle",
    "subfid-angle",
    "subfid-alpha-sweep",
    "fid-bto-compare",
    "fid-alpha-sweep",
    "fid-vs-subfid",
    "purity-check",
    "egorov-check",
    "bound-chain",
    "trace-norm-check",
)

K_MAX_LIMIT = 2001
ALPHA_MIN = 0.1

# Per-command default grids; the "full" profile widens the sweeps that the
# fast profile truncates for runtime.
_DEFAULTS = {
    "trace-ortho": dict(k_min=1, k_max=50),
    "subfid-ortho": dict(k_min=1, k_max=50),
    "trace-angle": dict(k_min=1, k_max=100, alpha=np.pi / 4),
    "subfid-angle": dict(k_min=1, k_max=100, alpha=np.pi / 4),
    "subfid-alpha-sweep": dict(k_max=200, alpha_grid=(0.2, np.pi / 2, 15)),
    "fid-bto-compare": dict(k_min=2, k_max=60, k_step=2, alpha=np.pi / 2, c=[2.0, 10.0, 50.0]),
    "fid-alpha-sweep": dict(k_max=200, alpha_grid=(0.2, np.pi / 2, 15)),
    "fid-vs-subfid": dict(k_min=2, k_max=60, k_step=2, alpha=np.pi / 2),
    "purity-check": dict(k_min=5, k_max=100, k_step=5),
    "egorov-check": dict(k_min=10, k_max=40, k_step=10, c=[2.0, 10.0]),
    "bound-chain": dict(k_min=10, k_max=60, k_step=10, alpha=np.pi / 2, c=[2.0, 10.0, 50.0]),
    "trace-norm-check": dict(k_min=400, k_max=400, alpha=np.pi / 2, c=[4.0], delta=0.25),
}

_FULL_OVERRIDES = {
    "subfid-alpha-sweep": dict(k_max=500),
    "fid-bto-compare": dict(k_max=200),
    "fid-alpha-sweep": dict(k_max=200),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    p = _Parser(prog="lagfid", description=__doc__.splitlines()[0])
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--k-min", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--k-step", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument(
        "--alpha-grid",
        type=str,
        default=None,
        help='grid "a:b:n" of n angles from a to b inclusive',
    )
    p.add_argument("--c", type=float, action="append", default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--quad-radial", type=int, default=0)
    p.add_argument("--quad-azimuth", type=int, default=0)
    p.add_argument("--profile", choices=("fast", "full"), default="fast")
    p.add_argument("--version", action="version", version=f"lagfid {__version__}")
    return p


def _parse_alpha_grid(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        raise SystemExit(1) from None


def resolve_config(args) -> dict:
    """Fill per-command defaults and validate the grids."""
    cfg = dict(
        command=args.command,
        k_min=args.k_min,
        k_max=args.k_max,
        k_step=args.k_step,
        alpha=args.alpha,
        alpha_grid=_parse_alpha_grid(args.alpha_grid) if args.alpha_grid else None,
        c=args.c,
        delta=args.delta,
        out=args.out,
        quad_radial=args.quad_radial,
        quad_azimuth=args.quad_azimuth,
        profile=args.profile,
    )
    defaults = dict(k_min=1, k_max=50, k_step=1, alpha=np.pi / 2, c=[2.0], delta=0.25)
    defaults.update(_DEFAULTS.get(args.command, {}))
    if args.profile == "full":
        defaults.update(_FULL_OVERRIDES.get(args.command, {}))
    for key, val in defaults.items():
        if cfg.get(key) is None:
            cfg[key] = val
    if cfg.get("alpha_grid") is None:
        cfg["alpha_grid"] = (0.2, np.pi / 2, 15)
    if cfg["out"] is None:
        cfg["out"] = f"{args.command}.csv"
    if not 1 <= cfg["k_min"] <= cfg["k_max"] <= K_MAX_LIMIT:
        print(
            f"error: need 1 <= k_min <= k_max <= {K_MAX_LIMIT}, "
            f"got [{cfg['k_min']}, {cfg['k_max']}]",
            file=sys.stderr,
        )
        raise SystemExit(1)
    if cfg["k_step"] < 1:
        print("error: k_step must be >= 1", file=sys.stderr)
        raise SystemExit(1)
    a, b, n = cfg["alpha_grid"]
    if not (ALPHA_MIN <= a <= b <= np.pi / 2 + 1e-12 and n >= 1):
        print(
            f"error: alpha grid must lie within [{ALPHA_MIN}, pi/2]", file=sys.stderr
        )
        raise SystemExit(1)
    if not ALPHA_MIN <= cfg["alpha"] <= np.pi / 2 + 1e-12:
        print(f"error: alpha must lie in [{ALPHA_MIN}, pi/2]", file=sys.stderr)
        raise SystemExit(1)
    return cfg


def _k_grid(cfg) -> list[int]:
    return list(range(cfg["k_min"], cfg["k_max"] + 1, cfg["k_step"]))


def _alpha_values(cfg) -> list[float]:
    a, b, n = cfg["alpha_grid"]
    return [float(v) for v in np.linspace(a, b, n)]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LAGFID_THREADS", "1")))
    except ValueError:
        return 1


def _map_grid(fn, items):
    """Evaluate fn over items, possibly in parallel, preserving order."""
    n = _threads()
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def fit_inverse_sin_sq(rows):
    """Fit value = C / sin^2(alpha), reading C off the alpha = pi/2 row.

    ``rows`` is a list of (alpha, value) pairs; returns (C, residuals) where
    residuals[i] = value_i * sin^2(alpha_i) - C.
    """
    C = None
    for alpha, value in rows:
        if abs(alpha - np.pi / 2) <= 1e-9:
            C = value
    if C is None:
        raise ValueError("fit requires a row with alpha = pi/2")
    residuals = [value * np.sin(alpha) ** 2 - C for alpha, value in rows]
    return C, residuals


def _subfid_predictor(alpha: float) -> float:
    """k * predicted sub-fidelity for the tilted great-circle pair (k-free)."""
    return predicted_subfidelity(sphere_intersection_data(alpha), 1)


def _trace_predictor(alpha: float) -> float:
    return predicted_trace(sphere_intersection_data(alpha), 1)


def _pair(k: int, alpha: float):
    level = Level(k)
    rho1 = equator_state(level)
    if abs(alpha - np.pi / 2) <= 1e-12:
        rho2 = meridian_state(level)
    else:
        rho2 = rotated_circle_state(level, alpha)
    return rho1, rho2


def _egorov_residual(k: int, alpha: float, c: float, cfg) -> float:
    level = Level(k)
    params = GaussianSymbolParams(c=c, delta=0.5, level=level)
    sym = gaussian_symbol(params)
    T = toeplitz_radial(level, sym)
    lhs = egorov_conjugate(level, T, alpha).entries
    rot = rotate_symbol(sym, alpha)
    if cfg["quad_radial"] or cfg["quad_azimuth"]:
        rot = type(rot)(
            kind=rot.kind,
            func=rot.func,
            quad_radial_nodes=cfg["quad_radial"],
            quad_azimuth_nodes=cfg["quad_azimuth"],
        )
    rhs = toeplitz_general(level, rot).entries
    return float(np.linalg.norm(lhs - rhs, 2))


def run(cfg) -> tuple[list[str], list[list], list[str], bool]:
    """Execute one command; returns (header, rows, notes, acceptance_ok)."""
    cmd = cfg["command"]
    notes = []
    ok = True

    if cmd in ("trace-ortho", "trace-angle"):
        alpha = np.pi / 2 if cmd == "trace-ortho" else cfg["alpha"]
        pred = _trace_predictor(alpha)

        def row(k):
            rho1, rho2 = _pair(k, alpha)
            return [k, alpha, k * expectation(rho1, rho2), pred]

        return ["k", "alpha", "k_trace", "predictor"], _map_grid(row, _k_grid(cfg)), notes, ok

    if cmd in ("subfid-ortho", "subfid-angle"):
        alpha = np.pi / 2 if cmd == "subfid-ortho" else cfg["alpha"]
        pred = _subfid_predictor(alpha)

        def row(k):
            rho1, rho2 = _pair(k, alpha)
            return [k, alpha, k * sub_fidelity(rho1, rho2), pred]

        return ["k", "alpha", "k_subfid", "predictor"], _map_grid(row, _k_grid(cfg)), notes, ok

    if cmd == "subfid-alpha-sweep":
        k = cfg["k_max"]
        rho1 = equator_state(Level(k))

        def row(alpha):
            rho2 = rotated_circle_state(Level(k), alpha)
            return [alpha, k, k * sub_fidelity(rho1, rho2), _subfid_predictor(alpha)]

        return ["alpha", "k", "k_subfid", "predictor"], _map_grid(row, _alpha_values(cfg)), notes, ok

    if cmd in ("fid-bto-compare", "bound-chain"):
        alpha = cfg["alpha"]
        grid = [(c, k) for c in cfg["c"] for k in _k_grid(cfg)]

        def row(item):
            c, k = item
            rho1, rho2 = _pair(k, alpha)
            f = fidelity(rho1, rho2)
            bound = fidelity_upper_bound(Level(k), alpha, c)
            return [k, alpha, c, k * f, k * bound, bound - f]

        rows = _map_grid(row, grid)
        worst = min(r[5] for r in rows)
        notes.append(f"bound margin (min over grid): {worst:.3e}")
        if worst < -1e-9:
            ok = False
            notes.append("ACCEPTANCE FAIL: fidelity exceeds its upper bound")
        return ["k", "alpha", "c", "k_fid", "k_bound", "margin"], rows, notes, ok

    if cmd == "fid-alpha-sweep":
        k = cfg["k_max"]
        level = Level(k)
        rho1 = equator_state(level)

        def row(alpha):
            rho2 = rotated_circle_state(level, alpha)
            return [alpha, k, k * fidelity(rho1, rho2)]

        rows = _map_grid(row, _alpha_values(cfg))
        try:
            C, residuals = fit_inverse_sin_sq([(r[0], r[2]) for r in rows])
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(1) from None
        for r, res in zip(rows, residuals):
            r.extend([C, res])
        notes.append(f"fit C = {C:.6g}; residual band [{min(residuals):.3g}, {max(residuals):.3g}]")
        return ["alpha", "k", "k_fid", "fit_c", "residual"], rows, notes, ok

    if cmd == "fid-vs-subfid":
        alpha = cfg["alpha"]
        pred = _subfid_predictor(alpha)

        def row(k):
            rho1, rho2 = _pair(k, alpha)
            return [k, alpha, k * fidelity(rho1, rho2), k * sub_fidelity(rho1, rho2), pred]

        header = ["k", "alpha", "k_fid", "k_subfid", "subfid_predictor"]
        return header, _map_grid(row, _k_grid(cfg)), notes, ok

    if cmd == "purity-check":

        def row(k):
            p = purity(equator_state(Level(k)))
            return [k, p, np.sqrt(np.pi * k) * p, 1.0]

        header = ["k", "purity", "scaled_purity", "predictor"]
        return header, _map_grid(row, _k_grid(cfg)), notes, ok

    if cmd == "egorov-check":
        angles = [np.pi / 6, np.pi / 4, np.pi / 3, np.pi / 2]
        grid = [(k, a, c) for k in _k_grid(cfg) for a in angles for c in cfg["c"]]

        def row(item):
            k, a, c = item
            return [k, a, c, _egorov_residual(k, a, c, cfg)]

        rows = _map_grid(row, grid)
        worst = max(r[3] for r in rows)
        notes.append(f"max conjugation residual: {worst:.3e}")
        if worst > 1e-6:
            ok = False
            notes.append("ACCEPTANCE FAIL: conjugation residual exceeds 1e-6")
        return ["k", "alpha", "c", "residual"], rows, notes, ok

    if cmd == "trace-norm-check":
        grid = [(k, c) for k in _k_grid(cfg) for c in cfg["c"]]

        def row(item):
            k, c = item
            numeric, pred = trace_norm_sqrt_product(Level(k), cfg["alpha"], c, cfg["delta"])
            return [k, cfg["alpha"], c, cfg["delta"], numeric, pred, numeric / pred]

        rows = _map_grid(row, grid)
        worst = max(abs(r[6] - 1) for r in rows)
        notes.append(f"max |numeric/predictor - 1|: {worst:.3g}")
        if worst > 0.10:
            ok = False
            notes.append("ACCEPTANCE FAIL: trace-norm ratio off by more than 10%")
        header = ["k", "alpha", "c", "delta", "numeric", "predictor", "ratio"]
        return header, rows, notes, ok

    raise SystemExit(1)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path: str, cfg, header, rows):
    echo = " ".join(
        f"{key}={cfg[key]}" for key in (
            "command", "k_min", "k_max", "k_step", "alpha", "alpha_grid", "c",
            "delta", "quad_radial", "quad_azimuth", "profile",
        )
    )
    with open(path, "w") as fh:
        fh.write(f"# lagfid {__version__}\n")
        fh.write(f"# {echo}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = resolve_config(args)
    header, rows, notes, ok = run(cfg)
    try:
        write_csv(cfg["out"], cfg, header, rows)
    except OSError as exc:
        print(f"error: cannot write {cfg['out']}: {exc}", file=sys.stderr)
        return 1
    print(f"{cfg['command']}: {len(rows)} rows -> {cfg['out']}")
    for note in notes:
        print(note)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
