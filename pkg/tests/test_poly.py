"""Matrix polynomial arithmetic."""

import numpy as np
import pytest

from mvop.poly import MatrixPoly, scalar_poly


def random_poly(rng, dim, deg):
    return MatrixPoly([rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
                       for _ in range(deg + 1)])


def test_constructors():
    z = MatrixPoly.zero(2)
    assert z.degree == 0 and not np.any(z(0.3))
    i = MatrixPoly.identity(3)
    assert np.allclose(i(1.7), np.eye(3))
    m = MatrixPoly.monomial(2, 2)
    assert np.allclose(m(3.0), 9.0 * np.eye(2))
    c = MatrixPoly.constant(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert np.allclose(c(5.0), [[0, 1], [0, 0]])


def test_from_scalar_evaluation():
    p = MatrixPoly.from_scalar([1.0, 0.0, 2.0], 2)
    assert np.allclose(p(1.5), (1.0 + 2.0 * 1.5**2) * np.eye(2))


def test_evaluation_matches_horner(rng):
    p = random_poly(rng, 3, 4)
    x = 0.37
    want = sum(p.coefficient(k) * x**k for k in range(5))
    assert np.allclose(p(x), want, atol=1e-13)


def test_add_sub_scale(rng):
    p = random_poly(rng, 2, 3)
    q = random_poly(rng, 2, 1)
    x = -0.9
    assert np.allclose((p + q)(x), p(x) + q(x), atol=1e-13)
    assert np.allclose((p - q)(x), p(x) - q(x), atol=1e-13)
    assert np.allclose((2.5 * p)(x), 2.5 * p(x), atol=1e-13)


def test_matmul_is_pointwise_product(rng):
    p = random_poly(rng, 2, 3)
    q = random_poly(rng, 2, 2)
    x = 1.21
    assert np.allclose(p.matmul(q)(x), p(x) @ q(x), atol=1e-12)


def test_lmul_rmul_order(rng):
    p = random_poly(rng, 2, 2)
    m = rng.standard_normal((2, 2))
    x = 0.8
    assert np.allclose(p.lmul(m)(x), m @ p(x), atol=1e-13)
    assert np.allclose(p.rmul(m)(x), p(x) @ m, atol=1e-13)


def test_x_times_shifts_coefficients(rng):
    p = random_poly(rng, 2, 2)
    q = p.x_times()
    assert q.degree == 3
    assert np.allclose(q(0.6), 0.6 * p(0.6), atol=1e-13)
    assert not np.any(q.coefficient(0))


def test_deriv(rng):
    p = random_poly(rng, 2, 4)
    x, h = 0.4, 1e-6
    approx = (p(x + h) - p(x - h)) / (2 * h)
    assert np.allclose(p.deriv()(x), approx, atol=1e-8)
    assert p.deriv().degree == 3


def test_conj_t_at_real_points(rng):
    p = random_poly(rng, 3, 3)
    x = -1.4
    assert np.allclose(p.conj_t()(x), p(x).conj().T, atol=1e-13)


def test_mul_scalar_poly(rng):
    p = random_poly(rng, 2, 2)
    u = scalar_poly([1.0, -2.0, 0.5])
    x = 0.9
    assert np.allclose(p.mul_scalar_poly(u)(x), u(x) * p(x), atol=1e-13)


def test_trim_and_degree():
    padded = MatrixPoly([np.eye(2), np.zeros((2, 2)), np.zeros((2, 2))])
    assert padded.trim().degree == 0
    # strict by default, tolerance-based on request
    tiny = MatrixPoly([np.eye(2), np.zeros((2, 2)), 1e-30 * np.eye(2)])
    assert tiny.trim().degree == 2
    assert tiny.trim(tol=1e-20).degree == 0
    assert MatrixPoly([np.eye(2), np.eye(2)]).degree == 1


def test_coefficient_out_of_range_is_zero(rng):
    p = random_poly(rng, 2, 1)
    assert not np.any(p.coefficient(7))


def test_dim_mismatch_rejected():
    p = MatrixPoly.identity(2)
    q = MatrixPoly.identity(3)
    with pytest.raises(ValueError):
        p + q
