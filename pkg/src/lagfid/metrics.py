"""Scalar comparisons between states: fidelity and its computable bounds.

Fidelity accepts any PSD pair (traces need not be 1; the Toeplitz upper-bound
chain relies on that).  Sub- and super-fidelity are only meaningful for
density matrices, so they verify trace 1 unless the caller explicitly opts
out.  For trace-1 PSD inputs the sandwich sub <= fidelity <= super holds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import HermitianOperator, eig_hermitian, sqrt_psd

__all__ = [
    "fidelity",
    "sub_fidelity",
    "super_fidelity",
    "purity",
    "expectation",
    "variance",
    "MetricReport",
    "metric_report",
]

_TRACE_TOL = 1e-9


def _entries(A) -> np.ndarray:
    return A.entries if isinstance(A, HermitianOperator) else np.asarray(A, dtype=complex)


def _check_trace_one(M: np.ndarray, name: str):
    tr = np.trace(M).real
    if abs(tr - 1.0) > _TRACE_TOL:
        raise ValueError(f"{name} must have trace 1, got {tr!r}")


def fidelity(rho, eta) -> float:
    """Uhlmann fidelity: (trace of the PSD square root of sqrt(rho) eta sqrt(rho))^2.

    Inputs must be PSD within the roundoff clamp of ``sqrt_psd`` but need not
    have trace 1; for density matrices the result lies in [0, 1] and equals 1
    exactly when the states coincide.
    """
    r = sqrt_psd(rho).entries
    M = r @ _entries(eta) @ r
    w, _ = eig_hermitian((M + M.conj().T) / 2)
    # Eigenvalues at roundoff level are noise; their square roots are not
    # (sqrt(eps) >> eps), so zero everything below the clamp before summing.
    clamp = len(w) * np.finfo(float).eps * max(1.0, float(np.abs(w).max()))
    if w.size and w[0] < -clamp:
        raise ValueError(
            f"matrix is not PSD within tolerance: eigenvalue {w[0]:.6e} < {-clamp:.3e}"
        )
    w = np.where(w > clamp, w, 0.0)
    return float(np.sqrt(w).sum() ** 2)


def sub_fidelity(rho, eta, check_trace: bool = True) -> float:
    """Trace-polynomial lower bound for fidelity.

    value = Tr(rho eta) + sqrt(2) sqrt(Tr(rho eta)^2 - Tr((rho eta)^2)).
    The radicand is a difference of nearly equal numbers for nearly commuting
    states; values within -1e-12 of zero are clamped, anything more negative
    signals broken inputs and raises.
    """
    R, E = _entries(rho), _entries(eta)
    if check_trace:
        _check_trace_one(R, "rho")
        _check_trace_one(E, "eta")
    P = R @ E
    t = np.trace(P).real
    t2 = np.trace(P @ P).real
    radicand = t * t - t2
    if radicand < -1e-12:
        raise ValueError(f"negative radicand {radicand!r} in sub-fidelity; inputs not PSD?")
    return float(t + np.sqrt(2.0) * np.sqrt(max(radicand, 0.0)))


def super_fidelity(rho, eta, check_trace: bool = True) -> float:
    """Trace-polynomial upper bound for fidelity.

    value = Tr(rho eta) + sqrt((1 - Tr rho^2)(1 - Tr eta^2)).
    """
    R, E = _entries(rho), _entries(eta)
    if check_trace:
        _check_trace_one(R, "rho")
        _check_trace_one(E, "eta")
    pr = np.trace(R @ R).real
    pe = np.trace(E @ E).real
    for name, p in (("rho", pr), ("eta", pe)):
        if p > 1 + 1e-10:
            raise ValueError(f"{name} has purity {p!r} > 1")
    t = np.trace(R @ E).real
    return float(t + np.sqrt(max(1 - pr, 0.0) * max(1 - pe, 0.0)))


def purity(rho) -> float:
    """Tr rho^2; equals 1 exactly for pure states."""
    R = _entries(rho)
    return float(np.trace(R @ R).real)


def expectation(rho, T) -> float:
    """Tr(T rho) for a Hermitian observable T."""
    R, M = _entries(rho), _entries(T)
    if R.shape != M.shape:
        raise ValueError(f"dimension mismatch: {R.shape} vs {M.shape}")
    return float(np.trace(M @ R).real)


def variance(rho, T) -> float:
    """Tr(T^2 rho) - Tr(T rho)^2; nonnegative up to roundoff."""
    R, M = _entries(rho), _entries(T)
    if R.shape != M.shape:
        raise ValueError(f"dimension mismatch: {R.shape} vs {M.shape}")
    mean = np.trace(M @ R).real
    second = np.trace(M @ M @ R).real
    return float(second - mean * mean)


@dataclass(frozen=True)
class MetricReport:
    """All pairwise scalar comparisons for one pair of density matrices."""

    fidelity: float
    sub_fidelity: float
    super_fidelity: float
    trace_product: float
    trace_product_sq: float
    purity_a: float
    purity_b: float


def metric_report(rho, eta) -> MetricReport:
    """Evaluate every metric on a pair of trace-1 PSD matrices."""
    R, E = _entries(rho), _entries(eta)
    P = R @ E
    return MetricReport(
        fidelity=fidelity(rho, eta),
        sub_fidelity=sub_fidelity(rho, eta),
        super_fidelity=super_fidelity(rho, eta),
        trace_product=float(np.trace(P).real),
        trace_product_sq=float(np.trace(P @ P).real),
        purity_a=purity(rho),
        purity_b=purity(eta),
    )
