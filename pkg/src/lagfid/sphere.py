"""Quantization of the two-sphere at level k.

Conventions
-----------
The quantum space at level ``k`` has dimension ``k + 1`` and orthonormal basis
``e_0, ..., e_k`` (monomials of degree k in two variables, suitably
normalized).  The sphere is mapped to the complex plane by stereographic
projection from the north pole, so the chart coordinate ``z`` relates to
Euclidean coordinates by ``x3 = (|z|^2 - 1)/(|z|^2 + 1)`` and
``x1 + i x2 = 2 z / (1 + |z|^2)``; the south pole is ``z = 0`` and the area
element convention is ``|dz ^ dzbar| = 2 dx dy``, giving the sphere total
area ``2 pi``.  All matrices are written in the basis ``(e_l)``.

Binomial and factorial quantities are evaluated through log-gamma and
exponentiated entrywise: the central binomial coefficient overflows 64-bit
floats near ``k = 510``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .hermitian import HermitianOperator, unitary_exp

__all__ = [
    "Level",
    "CurveWithDensity",
    "coherent_projector",
    "equator_state",
    "beta_integral",
    "meridian_state",
    "su2_generator",
    "rotation_operator",
    "rotated_circle_state",
    "state_from_curve",
    "bargmann_poisson_state",
    "log_binom",
]


def log_binom(n, m):
    """log of the binomial coefficient C(n, m), vectorized."""
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    return gammaln(n + 1) - gammaln(m + 1) - gammaln(n - m + 1)


@dataclass(frozen=True)
class Level:
    """The quantization parameter k; the state space has dimension k + 1."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"level k must be a positive integer, got {self.k}")

    @property
    def dim(self) -> int:
        return self.k + 1


@dataclass(frozen=True)
class CurveWithDensity:
    """A closed curve on the sphere in the stereographic chart, with a weight.

    ``chart_point`` maps t in [0, 1) to the chart coordinate z(t) (curves
    through the north pole, z = infinity, are not supported) and ``weight`` is
    a nonnegative density on [0, 1) integrating to 1 under the periodic
    trapezoid rule with ``nodes`` points.
    """

    chart_point: Callable[[np.ndarray], np.ndarray]
    weight: Callable[[np.ndarray], np.ndarray]
    nodes: int = 0


def _coherent_amplitudes(level: Level, z: complex) -> np.ndarray:
    """Unit vector a with a[m] proportional to sqrt(C(k, m)) * conj(z)^m."""
    k = level.k
    m = np.arange(k + 1)
    if z == 0:
        a = np.zeros(k + 1, dtype=complex)
        a[0] = 1.0
        return a
    r = abs(z)
    # log-space magnitude keeps k ~ 1000, |z| ~ 10 from overflowing
    log_mag = 0.5 * log_binom(k, m) + m * np.log(r) - (k / 2) * np.log1p(r * r)
    phase = np.exp(-1j * m * np.angle(z))
    a = np.exp(log_mag) * phase
    return a / np.linalg.norm(a)


def coherent_projector(level: Level, z: complex | None) -> HermitianOperator:
    """Rank-1 projector onto the coherent state at chart point z.

    ``z = None`` (or an infinite value) selects the north pole, where the
    coherent state is the last basis vector.
    """
    k = level.k
    if z is None or np.isinf(z):
        P = np.zeros((k + 1, k + 1), dtype=complex)
        P[k, k] = 1.0
        return HermitianOperator(P)
    if not np.isfinite(z):
        raise ValueError("chart point must be finite or None (north pole)")
    a = _coherent_amplitudes(level, complex(z))
    return HermitianOperator(np.outer(a, a.conj()))


def equator_state(level: Level) -> HermitianOperator:
    """The state of the uniform equator: diagonal binomial weights."""
    k = level.k
    w = np.exp(log_binom(k, np.arange(k + 1)) - k * np.log(2.0))
    w = w / w.sum()
    return HermitianOperator(np.diag(w).astype(complex))


def beta_integral(k: int, p: int) -> float:
    """The moment integral of y^(2p) / (1 + y^2)^(k+1) over the real line."""
    if not 0 <= p <= k:
        raise ValueError(f"p must lie in [0, {k}], got {p}")
    return float(
        np.pi
        * np.exp(
            log_binom(2 * k, k) - k * np.log(4.0) + log_binom(k, p) - log_binom(2 * k, 2 * p)
        )
    )


def meridian_state(level: Level) -> HermitianOperator:
    """The state of the uniform great circle through the poles.

    Real symmetric; entries vanish exactly when the index sum is odd.
    """
    k = level.k
    rho = np.zeros((k + 1, k + 1))
    lc = log_binom(k, np.arange(k + 1))
    base = log_binom(2 * k, k) - k * np.log(4.0)
    for m in range(k + 1):
        for l in range(m, k + 1, 2):
            q = (l - m) // 2
            val = (-1) ** q * np.exp(
                base + log_binom(k, m + q) + 0.5 * (lc[l] + lc[m]) - log_binom(2 * k, 2 * (m + q))
            )
            rho[m, l] = rho[l, m] = val
    return HermitianOperator(rho.astype(complex))


def su2_generator(level: Level) -> np.ndarray:
    """Generator of rotations about the x2 axis: real antisymmetric tridiagonal."""
    k = level.k
    G = np.zeros((k + 1, k + 1))
    l = np.arange(k)
    off = 0.5 * np.sqrt((l + 1) * (k - l))
    G[l + 1, l] = off
    G[l, l + 1] = -off
    return G


def rotation_operator(level: Level, alpha: float) -> np.ndarray:
    """Unitary implementing rotation by alpha about the x2 axis.

    Sign convention: ``rotation_operator(level, pi/2)`` conjugates the equator
    state into the meridian state.
    """
    return unitary_exp(su2_generator(level), alpha)


def rotated_circle_state(level: Level, alpha: float) -> HermitianOperator:
    """Equator state conjugated by rotation_operator(alpha): the state of the
    great circle x3 = x1 tan(alpha)."""
    U = rotation_operator(level, alpha)
    rho = U @ equator_state(level).entries @ U.conj().T
    return HermitianOperator((rho + rho.conj().T) / 2)


def state_from_curve(level: Level, curve: CurveWithDensity) -> HermitianOperator:
    """Weighted superposition of coherent projectors along a closed curve.

    Periodic trapezoid quadrature with ``curve.nodes`` points, defaulting to
    ``max(64, 8k)``: on circle families the integrand is a trigonometric
    polynomial of degree at most 2k, so this is exact with margin.
    """
    k = level.k
    nodes = curve.nodes if curve.nodes else max(64, 8 * k)
    if nodes < max(64, 8 * k):
        raise ValueError(f"need at least {max(64, 8 * k)} quadrature nodes, got {nodes}")
    t = np.arange(nodes) / nodes
    z = np.asarray(curve.chart_point(t), dtype=complex)
    w = np.asarray(curve.weight(t), dtype=float)
    if np.any(w < 0):
        raise ValueError("curve weight must be nonnegative")
    total = w.sum() / nodes
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"curve weight integrates to {total!r}, expected 1")
    B = np.empty((nodes, k + 1), dtype=complex)
    for j in range(nodes):
        B[j] = np.sqrt(w[j] / nodes) * _coherent_amplitudes(level, z[j])
    rho = B.T @ B.conj()
    return HermitianOperator((rho + rho.conj().T) / 2)


def bargmann_poisson_state(k: int, cutoff: int) -> np.ndarray:
    """Diagonal weights of the unit-circle state on the plane: Poisson(k).

    Returns the first ``cutoff + 1`` weights; rejects cutoffs leaving more
    than 1e-8 of mass in the tail.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    min_cut = int(np.ceil(k + 10 * np.sqrt(k)))
    l = np.arange(cutoff + 1)
    w = np.exp(l * np.log(k) - k - gammaln(l + 1))
    tail = 1.0 - w.sum()
    if cutoff < min_cut or tail > 1e-8:
        raise ValueError(
            f"cutoff {cutoff} too small (tail mass ~ {max(tail, 0.0):.3e}); "
            f"need at least {min_cut}"
        )
    return w
