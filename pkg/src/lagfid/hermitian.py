"""Dense Hermitian / positive-semidefinite linear algebra.

Everything here goes through full Hermitian eigendecompositions: matrices stay
small (a few thousand rows at most), Hermiticity is guaranteed by construction,
and the eigen route gives PSD guarantees for free.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "HermitianOperator",
    "eig_hermitian",
    "sqrt_psd",
    "unitary_exp",
    "trace_norm",
    "loewner_leq",
]

HERM_TOL = 1e-12


def _as_matrix(A) -> np.ndarray:
    if isinstance(A, HermitianOperator):
        return A.entries
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M.view(float))):
        raise ValueError("matrix has non-finite entries")
    return M


class HermitianOperator:
    """A dense complex square matrix with a Hermiticity contract.

    The constructor symmetrizes ``A <- (A + A^dagger)/2`` and records the
    asymmetry it removed in ``herm_defect``; inputs whose defect exceeds
    ``1e-12 * max(1, max|entry|)`` are rejected rather than silently repaired.
    """

    __slots__ = ("entries", "dim", "herm_defect")

    def __init__(self, entries):
        M = _as_matrix(entries)
        defect = float(np.abs(M - M.conj().T).max()) if M.size else 0.0
        scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
        if defect > HERM_TOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: defect {defect:.3e} exceeds "
                f"{HERM_TOL * scale:.3e}"
            )
        self.entries = (M + M.conj().T) / 2
        self.entries.setflags(write=False)
        self.dim = M.shape[0]
        self.herm_defect = defect

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim}, herm_defect={self.herm_defect:.2e})"


def eig_hermitian(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition A = V diag(w) V^dagger with w real ascending."""
    M = _as_matrix(A)
    M = (M + M.conj().T) / 2
    w, V = np.linalg.eigh(M)
    return w, V


def sqrt_psd(A, clamp: float | None = None) -> "HermitianOperator":
    """PSD square root via eigendecomposition.

    Eigenvalues in ``[-clamp, 0)`` are zeroed (roundoff repair); anything more
    negative raises. The default clamp is ``dim * eps * max(1, max|eigenvalue|)``
    (the absolute floor covers products like sqrt(rho) eta sqrt(rho), whose
    largest eigenvalue can be far below the scale of the roundoff incurred
    while forming them).
    """
    w, V = eig_hermitian(A)
    scale = float(np.abs(w).max()) if w.size else 0.0
    if clamp is None:
        clamp = len(w) * np.finfo(float).eps * max(1.0, scale)
    if w.size and w[0] < -clamp:
        raise ValueError(
            f"matrix is not PSD within tolerance: eigenvalue {w[0]:.6e} < {-clamp:.3e}"
        )
    w = np.clip(w, 0.0, None)
    R = (V * np.sqrt(w)) @ V.conj().T
    return HermitianOperator((R + R.conj().T) / 2)


def unitary_exp(G, t: float) -> np.ndarray:
    """exp(t G) for skew-Hermitian G, computed through the Hermitian matrix iG."""
    M = _as_matrix(G)
    scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
    skew_defect = float(np.abs(M + M.conj().T).max()) if M.size else 0.0
    if skew_defect > HERM_TOL * scale:
        raise ValueError(
            f"matrix is not skew-Hermitian: defect {skew_defect:.3e}"
        )
    w, V = np.linalg.eigh(1j * M)  # iG Hermitian, G = -i V diag(w) V^dagger
    return (V * np.exp(-1j * t * w)) @ V.conj().T


def trace_norm(A) -> float:
    """Sum of singular values (the Schatten-1 norm)."""
    M = _as_matrix(A)
    return float(np.linalg.svd(M, compute_uv=False).sum())


def loewner_leq(A, B, slack: float = 0.0) -> tuple[bool, float]:
    """Test A <= B in the Loewner order; returns (verdict, lambda_min(B - A))."""
    MA, MB = _as_matrix(A), _as_matrix(B)
    if MA.shape != MB.shape:
        raise ValueError(f"dimension mismatch: {MA.shape} vs {MB.shape}")
    w, _ = eig_hermitian(MB - MA)
    lam_min = float(w[0]) if w.size else 0.0
    return lam_min >= -slack, lam_min
