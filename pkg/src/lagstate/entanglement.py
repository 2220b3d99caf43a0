"""Schmidt analysis of bipartite vectors with equal factor dimensions.

A vector v = sum_{j,l} c_{jl} e_j (x) e_l in H (x) H is represented by its
coefficient matrix c (rows index the first factor).  All quantities below are
derived from c: the Schmidt decomposition is the SVD of c, the reduced
density of the first factor is c c^*, the entropy is the Shannon entropy of
its eigenvalues (natural log), and the nearest vector of product form is the
top Schmidt term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_complex_matrix, frobenius_distance, hermitian_eigen, svd

NORM_TOL = 1e-9
EIGENVALUE_FLOOR = 1e-15


@dataclass(frozen=True)
class SchmidtDecomposition:
    """v = sum_j alphas[j] * basis_left[:, j] (x) basis_right[:, j]."""

    alphas: np.ndarray
    basis_left: np.ndarray
    basis_right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.basis_left * self.alphas) @ self.basis_right.T


@dataclass(frozen=True)
class EntanglementReport:
    """Summary of the entanglement measures of one normalized state."""

    d: int
    entropy: float
    max_entropy: float
    separable_distance: float
    corollary_distance: float
    schmidt_spectrum: np.ndarray


def _state_matrix(coeffs: np.ndarray, *, require_normalized: bool) -> np.ndarray:
    c = as_complex_matrix(coeffs, "state coefficients")
    if c.shape[0] != c.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {c.shape}")
    if require_normalized:
        norm = float(np.linalg.norm(c.ravel()))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |v| = {norm:.12g}")
    return c


def schmidt(coeffs: np.ndarray) -> SchmidtDecomposition:
    """Schmidt decomposition of a (not necessarily normalized) state.

    The left/right bases are orthonormal and the coefficients are the
    singular values of the coefficient matrix in descending order.  With
    c = U S V^* the right basis holds the conjugated columns of V, so that
    ``reconstruct`` resumes c without further conjugation.
    """
    c = _state_matrix(coeffs, require_normalized=False)
    res = svd(c)
    return SchmidtDecomposition(
        alphas=res.singular_values,
        basis_left=res.left,
        basis_right=res.right.conj(),
    )


def partial_trace_2(coeffs: np.ndarray) -> np.ndarray:
    """Reduced density matrix of the first factor: c c^*."""
    c = _state_matrix(coeffs, require_normalized=False)
    return c @ c.conj().T


def schmidt_spectrum(coeffs: np.ndarray) -> np.ndarray:
    """Eigenvalues of the reduced density matrix, descending, clamped to [0, 1]."""
    rho = partial_trace_2(coeffs)
    lam, _ = hermitian_eigen(rho)
    return np.clip(lam.real, 0.0, 1.0)


def entropy(coeffs: np.ndarray, *, require_normalized: bool = True) -> float:
    """Entanglement entropy -sum lam ln lam in nats.

    Eigenvalues of the reduced density below 1e-15 are treated as exact
    zeros (0 ln 0 = 0).  The sum is accumulated with compensated summation.
    """
    c = _state_matrix(coeffs, require_normalized=require_normalized)
    lam = schmidt_spectrum(c)
    terms = [-x * math.log(x) for x in lam if x > EIGENVALUE_FLOOR]
    return math.fsum(terms)


def closest_separable(coeffs: np.ndarray) -> tuple[np.ndarray, float]:
    """Nearest product vector and its distance from the state.

    The minimizer keeps only the top Schmidt term; the distance is the
    Euclidean norm of the remaining Schmidt coefficients.
    """
    dec = schmidt(coeffs)
    u_s = dec.alphas[0] * np.outer(dec.basis_left[:, 0], dec.basis_right[:, 0])
    distance = math.sqrt(math.fsum(float(a) ** 2 for a in dec.alphas[1:]))
    return u_s, distance


def is_maximally_entangled(coeffs: np.ndarray, *, tol: float = 1e-9) -> bool:
    """Whether the Schmidt spectrum is flat, i.e. the entropy attains ln d.

    Two equivalent checks are run: the entropy is within ``tol`` of ln d,
    and every eigenvalue is within sqrt(2 tol / d) of 1/d (the second-order
    expansion of the entropy around the flat spectrum).  A disagreement
    between them indicates a borderline state and raises.
    """
    c = _state_matrix(coeffs, require_normalized=True)
    d = c.shape[0]
    by_entropy = abs(entropy(c) - math.log(d)) <= tol
    lam = schmidt_spectrum(c)
    by_spectrum = bool(np.max(np.abs(lam - 1.0 / d)) <= math.sqrt(2.0 * tol / d))
    if by_entropy != by_spectrum:
        raise ValueError(
            "maximal-entanglement checks disagree: "
            f"entropy check {by_entropy}, spectrum check {by_spectrum}")
    return by_entropy


def corollary_distance_identity(coeffs: np.ndarray, *, tol: float = 1e-9) -> tuple[float, float]:
    """Separable distance of a maximally entangled state vs sqrt(1 - e^-nu).

    Returns the pair (distance, sqrt(1 - exp(-entropy))); for maximally
    entangled states the two agree.  Raises for states that are not
    maximally entangled within ``tol``.
    """
    c = _state_matrix(coeffs, require_normalized=True)
    nu = entropy(c)
    d = c.shape[0]
    if abs(nu - math.log(d)) > tol:
        raise ValueError(
            f"state is not maximally entangled: entropy {nu:.12g} vs ln d "
            f"= {math.log(d):.12g}")
    _, distance = closest_separable(c)
    return distance, math.sqrt(max(0.0, 1.0 - math.exp(-nu)))


def analyze(coeffs: np.ndarray) -> EntanglementReport:
    """Full entanglement summary of a normalized state."""
    c = _state_matrix(coeffs, require_normalized=True)
    nu = entropy(c)
    _, distance = closest_separable(c)
    return EntanglementReport(
        d=c.shape[0],
        entropy=nu,
        max_entropy=math.log(c.shape[0]),
        separable_distance=distance,
        corollary_distance=math.sqrt(max(0.0, 1.0 - math.exp(-nu))),
        schmidt_spectrum=schmidt_spectrum(c),
    )


def separable_distance_minimized(coeffs: np.ndarray, *, seed: int,
                                 starts: int = 16, iters: int = 500,
                                 tol: float = 1e-12) -> float:
    """Distance to the separable set by direct numerical minimization.

    Alternating maximization of the overlap |<u1 (x) u2, v>| over unit
    vectors u1, u2 from several seeded random starts.  Intentionally avoids
    the SVD so it can serve as an independent check on
    :func:`closest_separable`.
    """
    c = _state_matrix(coeffs, require_normalized=False)
    d = c.shape[0]
    rng = np.random.default_rng(seed)
    total = float(np.linalg.norm(c.ravel()))
    best = 0.0
    for _ in range(starts):
        b = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        b /= np.linalg.norm(b)
        value = 0.0
        for _ in range(iters):
            m = c @ b.conj()
            na = np.linalg.norm(m)
            if na == 0.0:
                break
            a = m / na
            h = c.T @ a.conj()
            nb = np.linalg.norm(h)
            if nb == 0.0:
                break
            b = h / nb
            if abs(nb - value) <= tol * max(1.0, nb):
                value = float(nb)
                break
            value = float(nb)
        best = max(best, value)
    return math.sqrt(max(0.0, total * total - best * best))
