"""Closed-form leading-order predictors for the state metrics.

The exact metrics of two curve states concentrate, as k grows, on quantities
determined by the geometry of the two curves: the principal angles at each
transverse intersection point and the product of the two densities there.
This module evaluates those closed forms, the determinant identities that
underlie them, and the specialization to great circles on the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "principal_angles",
    "sin_det_identity",
    "symplectic_det_identity",
    "IntersectionDatum",
    "LagrangianPairData",
    "predicted_trace",
    "predicted_trace_sq",
    "predicted_subfidelity",
    "predicted_superfidelity",
    "predicted_purity",
    "predicted_fidelity_bound",
    "sphere_intersection_data",
]

_DET_TOL = 1e-10


def _orthonormalize(basis, metric: np.ndarray) -> np.ndarray:
    """Columns orthonormal w.r.t. <u, v> = u^T metric v, via Cholesky + QR."""
    B = np.column_stack([np.asarray(v, dtype=float) for v in basis])
    L = np.linalg.cholesky(metric)
    Q, R = np.linalg.qr(L.T @ B)
    if np.abs(np.diag(R)).min() < 1e-10 * max(1.0, np.abs(R).max()):
        raise ValueError("basis is rank deficient")
    # Columns of W are metric-orthonormal and span the same subspace as B.
    W = np.linalg.solve(L.T, Q)
    return W


def _cross_gram(basisE, basisF, metric: np.ndarray | None) -> np.ndarray:
    dim = len(np.asarray(basisE[0], dtype=float))
    M = np.eye(dim) if metric is None else np.asarray(metric, dtype=float)
    QE = _orthonormalize(basisE, M)
    QF = _orthonormalize(basisF, M)
    if QE.shape[1] < QF.shape[1]:
        raise ValueError(
            f"dim E = {QE.shape[1]} must be at least dim F = {QF.shape[1]}"
        )
    return QE.T @ M @ QF


def principal_angles(basisE, basisF, gram_metric=None) -> np.ndarray:
    """Canonical angles between two subspaces, ascending, in [0, pi/2].

    Computed as arccos of the singular values of the cross-Gram matrix of
    metric-orthonormalized bases; equivalent to the recursive max-overlap
    definition but numerically stable.
    """
    s = np.linalg.svd(_cross_gram(basisE, basisF, gram_metric), compute_uv=False)
    return np.sort(np.arccos(np.clip(s, 0.0, 1.0)))


def sin_det_identity(basisE, basisF, gram_metric=None) -> tuple[float, float]:
    """Both sides of det(I - G^T G) = product of sin^2 of the angles.

    The left side is re-evaluated under a random re-orthonormalization of each
    basis and must agree to 1e-10: the determinant depends only on the pair of
    subspaces, not on the chosen bases.
    """
    G = _cross_gram(basisE, basisF, gram_metric)
    n = G.shape[1]
    lhs = float(np.linalg.det(np.eye(n) - G.T @ G))
    theta = principal_angles(basisE, basisF, gram_metric)
    rhs = float(np.prod(np.sin(theta) ** 2))
    rng = np.random.default_rng(0)
    BE = np.column_stack([np.asarray(v, dtype=float) for v in basisE])
    BF = np.column_stack([np.asarray(v, dtype=float) for v in basisF])
    BE2 = BE @ _random_invertible(rng, BE.shape[1])
    BF2 = BF @ _random_invertible(rng, BF.shape[1])
    G2 = _cross_gram(list(BE2.T), list(BF2.T), gram_metric)
    lhs2 = float(np.linalg.det(np.eye(n) - G2.T @ G2))
    if abs(lhs - lhs2) > _DET_TOL:
        raise ValueError(
            f"determinant not basis-independent: {lhs!r} vs {lhs2!r}"
        )
    return lhs, rhs


def _random_invertible(rng, n: int) -> np.ndarray:
    while True:
        A = rng.standard_normal((n, n))
        if abs(np.linalg.det(A)) > 1e-3:
            return A


def symplectic_det_identity(
    basisE, basisF, symplectic_form, complex_structure
) -> tuple[float, float]:
    """Both sides of det(I + Xi^T Xi) = product of (1 + sin^2 theta).

    E and F must be Lagrangian for the given form, and the compatible inner
    product (u|v) = omega(u, J v) must be symmetric positive definite; Xi is
    the matrix of the form across the two orthonormalized bases.
    """
    omega = np.asarray(symplectic_form, dtype=float)
    J = np.asarray(complex_structure, dtype=float)
    metric = omega @ J
    metric = (metric + metric.T) / 2
    if np.linalg.eigvalsh(metric).min() <= 0:
        raise ValueError("omega(., J .) is not positive definite")
    for name, basis in (("E", basisE), ("F", basisF)):
        B = np.column_stack([np.asarray(v, dtype=float) for v in basis])
        defect = float(np.abs(B.T @ omega @ B).max())
        if defect > _DET_TOL:
            raise ValueError(
                f"basis {name} is not Lagrangian: max |omega(e_i, e_j)| = {defect:.3e}"
            )
    QE = _orthonormalize(basisE, metric)
    QF = _orthonormalize(basisF, metric)
    Xi = QE.T @ omega @ QF
    n = Xi.shape[1]
    lhs = float(np.linalg.det(np.eye(n) + Xi.T @ Xi))
    theta = principal_angles(basisE, basisF, metric)
    rhs = float(np.prod(1 + np.sin(theta) ** 2))
    return lhs, rhs


@dataclass(frozen=True)
class IntersectionDatum:
    """Local data of one transverse intersection point of the two curves.

    ``angles`` are the principal angles of the two tangent spaces, ascending
    and strictly positive; ``density_product`` is the product of the two
    density values at the point.
    """

    angles: tuple
    density_product: float

    def __post_init__(self):
        ang = tuple(float(a) for a in self.angles)
        if any(a <= 0 or a > np.pi / 2 + 1e-12 for a in ang):
            raise ValueError(f"angles must lie in (0, pi/2], got {ang}")
        if list(ang) != sorted(ang):
            raise ValueError("angles must be sorted ascending")
        if self.density_product <= 0:
            raise ValueError("density product must be positive")
        object.__setattr__(self, "angles", ang)


@dataclass(frozen=True)
class LagrangianPairData:
    """Everything the predictors need about a pair of curves-with-densities.

    ``n`` is the dimension of each curve (half the phase-space dimension),
    ``points`` the transverse intersection data, and ``f_integrals`` the two
    density integrals used by the super-fidelity and purity predictors.
    """

    n: int
    points: tuple
    f_integrals: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "f_integrals", tuple(float(v) for v in self.f_integrals))
        for p in self.points:
            if len(p.angles) != self.n:
                raise ValueError(
                    f"intersection datum has {len(p.angles)} angles, expected {self.n}"
                )


def _sin_products(p: IntersectionDatum):
    s = np.sin(np.asarray(p.angles))
    return float(np.prod(s)), float(np.prod(np.sqrt(1 + s * s)))


def predicted_trace(data: LagrangianPairData, k: int) -> float:
    """Leading term of Tr(rho_1 rho_2): (2pi/k)^n sum of densities / sin products.

    Empty intersection data yields 0 (disjoint supports: the trace decays
    faster than any power of 1/k).
    """
    if not data.points:
        return 0.0
    total = sum(p.density_product / _sin_products(p)[0] for p in data.points)
    return float((2 * np.pi / k) ** data.n * total)


def predicted_trace_sq(data: LagrangianPairData, k: int) -> float:
    """Leading term of Tr((rho_1 rho_2)^2)."""
    if not data.points:
        return 0.0
    total = 0.0
    for p in data.points:
        sp, cp = _sin_products(p)
        total += p.density_product**2 / (sp * cp)
    return float((2 * np.pi / k) ** (2 * data.n) * total)


def predicted_subfidelity(data: LagrangianPairData, k: int) -> float:
    """Leading term of the sub-fidelity: (2pi/k)^n (C1 + sqrt(2(C2 + C3)))."""
    if not data.points:
        return 0.0
    terms = []
    for p in data.points:
        sp, cp = _sin_products(p)
        terms.append((p.density_product, sp, cp))
    C1 = sum(d / sp for d, sp, _ in terms)
    C2 = sum(
        terms[i][0] * terms[j][0] / (terms[i][1] * terms[j][1])
        for i in range(len(terms))
        for j in range(len(terms))
        if i != j
    )
    C3 = sum(d**2 / sp * (1 / sp - 1 / cp) for d, sp, cp in terms)
    return float((2 * np.pi / k) ** data.n * (C1 + np.sqrt(2 * (C2 + C3))))


def predicted_superfidelity(data: LagrangianPairData, k: int) -> float:
    """Leading behavior of the super-fidelity: 1 - (1/2)(2pi/k)^(n/2) (I1 + I2)."""
    i1, i2 = data.f_integrals
    return float(1 - 0.5 * (2 * np.pi / k) ** (data.n / 2) * (i1 + i2))


def predicted_purity(d: int, f_integral: float, k: int) -> float:
    """Leading term of the purity of a single curve state: (2pi/k)^(d/2) * integral."""
    if f_integral <= 0:
        raise ValueError("density integral must be positive")
    return float((2 * np.pi / k) ** (d / 2) * f_integral)


def predicted_fidelity_bound(k: int, alpha: float, delta: float) -> float:
    """Leading term of the fidelity upper bound: 16 k^(3 delta - 1) / (pi sin^2 alpha).

    An upper-bound predictor, not an equivalent; valid for delta in (0, 1/2]
    and alpha bounded away from the sin-alpha singularity.
    """
    if not 0 < delta <= 0.5:
        raise ValueError(f"delta must lie in (0, 1/2], got {delta}")
    if not 0.1 <= alpha <= np.pi / 2:
        raise ValueError(f"alpha must lie in [0.1, pi/2], got {alpha}")
    return float(16 * k ** (3 * delta - 1) / (np.pi * np.sin(alpha) ** 2))


def sphere_intersection_data(alpha: float) -> LagrangianPairData:
    """Intersection data of the equator with a great circle tilted by alpha.

    Two antipodal transverse intersection points, each with single principal
    angle alpha and density product 1/(2 pi^2); the uniform density on a great
    circle integrates to 1/(pi sqrt(2)) in the metric normalizing the sphere
    area to 2 pi.
    """
    if not 0 < alpha <= np.pi / 2 + 1e-12:
        raise ValueError(f"alpha must lie in (0, pi/2], got {alpha}")
    point = IntersectionDatum(angles=(alpha,), density_product=1 / (2 * np.pi**2))
    circ = 1 / (np.pi * np.sqrt(2.0))
    return LagrangianPairData(n=1, points=(point, point), f_integrals=(circ, circ))
