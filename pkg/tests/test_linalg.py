import math

import numpy as np
import pytest

from lagstate.linalg import (SvdResult, frobenius_distance, hermitian_eigen,
                             max_abs, svd)


def test_svd_identity_input():
    res = svd(np.eye(3))
    assert np.allclose(res.singular_values, np.ones(3), atol=1e-15)
    # U and V are diagonal with a common phase per column.
    off = ~np.eye(3, dtype=bool)
    assert max_abs(res.left[off]) <= 1e-14
    assert max_abs(res.right[off]) <= 1e-14
    assert np.allclose(np.diag(res.left) / np.diag(res.right), np.ones(3),
                       atol=1e-14)


def test_svd_diagonal_ordering_and_ties():
    c = np.diag([1.0, 4.0, 1.0]) / math.sqrt(18.0)
    res = svd(c)
    expected = np.array([4.0, 1.0, 1.0]) / math.sqrt(18.0)
    assert np.allclose(res.singular_values, expected, rtol=1e-15)
    # Ties keep the original column order: column 0 before column 2.
    assert abs(res.left[1, 0]) > 0.99
    assert abs(res.left[0, 1]) > 0.99
    assert abs(res.left[2, 2]) > 0.99


def test_svd_reconstruction_and_unitarity_sweep():
    rng = np.random.default_rng(42)
    cases = []
    for d in (1, 2, 3, 5, 8, 16):
        cases.append(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    # Large scale, rank deficient, and zero inputs.
    cases.append(1e6 * (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))))
    a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    cases.append(np.outer(a, b))
    cases.append(np.zeros((4, 4), dtype=complex))
    for c in cases:
        res = svd(c)
        d = c.shape[0]
        scale = np.linalg.norm(c.ravel())
        assert frobenius_distance(res.reconstruct(), c) <= 1e-12 * max(scale, 1.0)
        assert max_abs(res.left.conj().T @ res.left - np.eye(d)) <= 1e-12
        assert max_abs(res.right.conj().T @ res.right - np.eye(d)) <= 1e-12
        assert np.all(np.diff(res.singular_values) <= 1e-15)
        assert np.all(res.singular_values >= 0.0)


def test_svd_matches_hermitian_eigen_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        c = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        res = svd(c)
        eigvals, _ = hermitian_eigen(c.conj().T @ c)
        assert max_abs(res.singular_values ** 2 - eigvals) <= 1e-10


def test_svd_singular_values_unitarily_invariant():
    rng = np.random.default_rng(13)
    from conftest import random_unitary
    for d in (2, 4, 6):
        c = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        u = random_unitary(rng, d)
        w = random_unitary(rng, d)
        s0 = svd(c).singular_values
        s1 = svd(u @ c @ w).singular_values
        assert max_abs(s0 - s1) <= 1e-10


def test_svd_deterministic():
    rng = np.random.default_rng(3)
    c = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    r1 = svd(c)
    r2 = svd(c)
    assert np.array_equal(r1.left, r2.left)
    assert np.array_equal(r1.singular_values, r2.singular_values)
    assert np.array_equal(r1.right, r2.right)


def test_svd_rejects_bad_input():
    with pytest.raises(ValueError, match="non-finite"):
        svd(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError, match="square"):
        svd(np.ones((2, 3)))
    with pytest.raises(ValueError, match="2-D"):
        svd(np.ones(4))


def test_svd_convergence_error_names_residual():
    rng = np.random.default_rng(1)
    c = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    with pytest.raises(RuntimeError, match="off-diagonal ratio"):
        svd(c, max_sweeps=1)


def test_hermitian_eigen_examples():
    vals, vecs = hermitian_eigen(3.0 * np.eye(2))
    assert np.allclose(vals, [3.0, 3.0], atol=1e-15)
    pauli_x = np.array([[0.0, 1.0], [1.0, 0.0]])
    vals, vecs = hermitian_eigen(pauli_x)
    assert np.allclose(vals, [1.0, -1.0], atol=1e-14)
    assert max_abs(pauli_x @ vecs - vecs @ np.diag(vals)) <= 1e-10


def test_hermitian_eigen_sum_matches_trace():
    rng = np.random.default_rng(5)
    for d in (2, 3, 6):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = a @ a.conj().T
        vals, vecs = hermitian_eigen(h)
        assert abs(math.fsum(vals) - np.trace(h).real) <= 1e-10 * max_abs(h) * d
        assert max_abs(h @ vecs - vecs * vals) <= 1e-10 * max_abs(h)
        assert np.all(np.diff(vals) <= 1e-15)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_frobenius_distance_basics():
    v = np.array([1.0 + 1j, 2.0])
    assert frobenius_distance(v, v) == 0.0
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    assert abs(frobenius_distance(e1, e2) - math.sqrt(2.0)) <= 1e-15
    with pytest.raises(ValueError, match="shape mismatch"):
        frobenius_distance(np.ones(2), np.ones(3))


def test_frobenius_distance_to_top_schmidt_term():
    # Maximally entangled state at d = 4: distance to the nearest product
    # vector is sqrt(3)/2.
    from lagstate.entanglement import closest_separable
    v = np.eye(4, dtype=complex) / 2.0
    u_s, dist = closest_separable(v)
    assert abs(frobenius_distance(v, u_s) - math.sqrt(3.0) / 2.0) <= 1e-12
    assert abs(dist - math.sqrt(3.0) / 2.0) <= 1e-12


def test_svd_result_reconstruct_is_pure():
    c = np.diag([2.0, 1.0]).astype(complex)
    res = svd(c)
    assert isinstance(res, SvdResult)
    first = res.reconstruct()
    second = res.reconstruct()
    assert np.array_equal(first, second)
