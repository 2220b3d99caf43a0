"""Dense complex linear algebra for small coefficient matrices.

The SVD is a one-sided Jacobi iteration on the columns of the input.  It is
deliberately self-contained so that the Schmidt route through ``svd`` stays
independent of the spectral route through ``hermitian_eigen`` (which wraps
LAPACK); the two are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Off-diagonal Gram ratio below which a column pair counts as orthogonal.
JACOBI_TOL = 1e-13
MAX_SWEEPS = 30


@dataclass(frozen=True)
class SvdResult:
    """Factorization a = left @ diag(singular_values) @ right.conj().T."""

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.conj().T


def as_complex_matrix(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Validate and copy input into a finite complex 2-D array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return a.copy()


def max_abs(a: np.ndarray) -> float:
    """Largest entry magnitude; zero for empty input."""
    a = np.asarray(a)
    return 0.0 if a.size == 0 else float(np.max(np.abs(a)))


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius (Hilbert-Schmidt) distance between equally shaped arrays."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm((a - b).ravel()))


def _complete_orthonormal(u: np.ndarray, missing: list[int]) -> None:
    """Fill zero columns of u with unit vectors orthogonal to the rest.

    Deterministic: candidates are scanned in canonical basis order and a
    candidate is accepted once its residual keeps at least half its norm.
    """
    n = u.shape[0]
    filled = [j for j in range(n) if j not in missing]
    for j in missing:
        for i in range(n):
            cand = np.zeros(n, dtype=complex)
            cand[i] = 1.0
            for f in filled:
                cand -= np.vdot(u[:, f], cand) * u[:, f]
            norm = np.linalg.norm(cand)
            if norm > 0.5:
                u[:, j] = cand / norm
                filled.append(j)
                break
        else:
            raise RuntimeError("failed to complete orthonormal basis")


def svd(a: np.ndarray, *, tol: float = JACOBI_TOL,
        max_sweeps: int = MAX_SWEEPS) -> SvdResult:
    """One-sided Jacobi SVD of a square complex matrix.

    Columns of a working copy are rotated in a fixed cyclic pair order until
    every off-diagonal Gram ratio |<a_p, a_q>| / (|a_p| |a_q|) falls below
    ``tol``.  Singular values are returned in descending order; equal values
    keep the relative order of the original columns.

    Raises
    ------
    ValueError
        Non-square or non-finite input.
    RuntimeError
        No convergence within ``max_sweeps`` sweeps.
    """
    a = as_complex_matrix(a, "svd input")
    n, m = a.shape
    if n != m:
        raise ValueError(f"svd input must be square, got shape {a.shape}")
    u = a.copy()
    v = np.eye(n, dtype=complex)

    worst = 0.0
    for _ in range(max_sweeps):
        worst = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = float(np.real(np.vdot(u[:, p], u[:, p])))
                aqq = float(np.real(np.vdot(u[:, q], u[:, q])))
                if app == 0.0 or aqq == 0.0:
                    continue
                apq = complex(np.vdot(u[:, p], u[:, q]))
                beta = abs(apq)
                ratio = beta / math.sqrt(app * aqq)
                worst = max(worst, ratio)
                if ratio <= tol:
                    continue
                # Unitary plane rotation chosen to zero <a_p', a_q'>.
                phase = apq / beta
                tau = (aqq - app) / (2.0 * beta)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                col_p = u[:, p].copy()
                u[:, p] = c * col_p - s * np.conj(phase) * u[:, q]
                u[:, q] = s * col_p + c * np.conj(phase) * u[:, q]
                rot_p = v[:, p].copy()
                v[:, p] = c * rot_p - s * np.conj(phase) * v[:, q]
                v[:, q] = s * rot_p + c * np.conj(phase) * v[:, q]
        if worst <= tol:
            break
    else:
        raise RuntimeError(
            f"jacobi svd did not converge in {max_sweeps} sweeps; "
            f"worst off-diagonal ratio {worst:.3e}")

    sigma = np.linalg.norm(u, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    u = u[:, order]
    v = v[:, order]
    missing = []
    for j in range(n):
        if sigma[j] > 0.0:
            u[:, j] /= sigma[j]
        else:
            missing.append(j)
    if missing:
        _complete_orthonormal(u, missing)
    return SvdResult(left=u, singular_values=sigma, right=v)


def hermitian_eigen(h: np.ndarray, *, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Thin wrapper over LAPACK's Hermitian solver; serves as the spectral
    cross-check for :func:`svd`.  Rejects input whose Hermitian defect
    exceeds ``tol`` relative to its largest entry.
    """
    h = as_complex_matrix(h, "hermitian_eigen input")
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"hermitian_eigen input must be square, got {h.shape}")
    defect = max_abs(h - h.conj().T)
    scale = max_abs(h)
    if defect > tol * scale:
        raise ValueError(
            f"input is not Hermitian: max |h - h^*| = {defect:.3e} "
            f"(max entry {scale:.3e})")
    w, vecs = np.linalg.eigh(h)
    return w[::-1].copy(), vecs[:, ::-1].copy()
