"""Matrix helper routines."""

import numpy as np
import pytest
import scipy.linalg

from mvop.linalg import (
    as_matrix,
    cholesky,
    frob,
    is_hermitian,
    mat_exp,
    nilpotency_index,
    rel_residual,
    unit_lower_inverse,
)


def test_as_matrix_coerces_to_complex():
    m = as_matrix([[3.0]])
    assert m.shape == (1, 1)
    assert m.dtype == complex
    assert m[0, 0] == 3.0


def test_as_matrix_rejects_nonsquare():
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        as_matrix(3.0)


def test_frob_matches_norm(rng):
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert frob(m) == pytest.approx(np.linalg.norm(m))


def test_rel_residual_scales_by_terms():
    r = np.array([[1e-8]])
    big = np.array([[1e4]])
    # denominator is the largest term norm, floored at one
    assert rel_residual(r, big) == pytest.approx(1e-12)
    assert rel_residual(r, np.array([[1e-3]])) == pytest.approx(1e-8)


def test_is_hermitian():
    assert is_hermitian(np.array([[2.0, 1 - 1j], [1 + 1j, 3.0]]))
    assert not is_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nilpotency_index_subdiagonal(k):
    a = np.diag(np.arange(1.0, float(k + 1)), -1)
    assert nilpotency_index(a) == k + 1


def test_nilpotency_index_none_for_invertible():
    assert nilpotency_index(np.eye(3)) is None


def test_mat_exp_nilpotent_is_polynomial(rng):
    a = np.zeros((3, 3))
    a[1, 0] = 1.7
    a[2, 1] = -0.4
    x = 0.83
    want = np.eye(3) + x * a + 0.5 * x**2 * (a @ a)
    assert np.allclose(mat_exp(a, x), want, atol=1e-14)


def test_mat_exp_general_matches_scipy(rng):
    a = rng.standard_normal((4, 4))
    x = -0.6
    assert np.allclose(mat_exp(a, x), scipy.linalg.expm(x * a), atol=1e-12)


def test_cholesky_reconstructs(rng):
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    t = g @ g.conj().T + 3.0 * np.eye(3)
    k = cholesky(t)
    assert np.allclose(k @ k.conj().T, t, atol=1e-12)
    assert np.allclose(k, np.tril(k))


def test_cholesky_rejects_indefinite():
    with pytest.raises(ValueError):
        cholesky(np.diag([1.0, -1.0]))


def test_unit_lower_inverse(rng):
    l = np.tril(rng.standard_normal((4, 4)), -1) + np.eye(4)
    assert np.allclose(unit_lower_inverse(l) @ l, np.eye(4), atol=1e-13)


def test_unit_lower_inverse_rejects_bad_diagonal():
    with pytest.raises(ValueError):
        unit_lower_inverse(np.array([[2.0, 0.0], [1.0, 1.0]]))
