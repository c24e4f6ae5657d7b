"""Integral ladder coefficients and the kernel identities behind them."""

import numpy as np
import pytest

from mvop.duran_ismail import (
    EF_coefficients,
    divided_difference_values,
    ef_ladder_residual,
    ef_sum_relation_residual,
    hermite_pearson_EF_closed,
    pearson_residual,
    rho,
    rho_commutator_residual,
)
from mvop.linalg import rel_residual
from mvop.weights import (
    pearson_V_hermite,
    pearson_V_numeric,
    pearson_alpha_parameters,
    pearson_hermite_weight,
    scalar_weight,
)

GRID = (-1.2, -0.4, 0.3, 0.9)


def test_rho_is_conjugated_nilpotent(gauss2):
    w = gauss2.weight
    for x in (-0.7, 0.5):
        r = rho(w, x)
        assert np.allclose(np.linalg.inv(w(x)) @ w.A @ w(x), r, atol=1e-12)
        assert np.allclose(r @ r, 0.0, atol=1e-12)


def test_rho_is_quadratic_in_x(gauss2):
    # nilpotent A of index two keeps the conjugation at degree two, so
    # three samples determine the value anywhere
    w = gauss2.weight
    nodes = (-1.0, 0.0, 1.0)
    vals = [rho(w, t) for t in nodes]
    for x in (2.0, -1.7):
        pred = sum(v * np.prod([(x - s) / (t - s) for s in nodes if s != t])
                   for v, t in zip(vals, nodes))
        assert np.allclose(pred, rho(w, x), atol=1e-11)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_pearson_identity_closed_v(dim):
    w = pearson_hermite_weight(dim) if dim > 1 else scalar_weight([0.0, 0.0, 1.0])
    v_cl = pearson_V_hermite(pearson_alpha_parameters(dim) if dim > 1 else [1.0])
    for x in GRID:
        assert pearson_residual(w, v_cl, x) < 1e-10


def test_pearson_identity_quartic(freud2):
    v_fit = pearson_V_numeric(freud2.weight)
    for x in GRID:
        assert pearson_residual(freud2.weight, v_fit, x) < 1e-8


def test_divided_difference_values():
    v = pearson_V_hermite(pearson_alpha_parameters(2))
    x = 0.7
    ys = np.array([-1.0, 0.2, x])
    got = divided_difference_values(v, x, ys)
    assert got.shape == (3, 2, 2)
    for i in range(2):
        want = (v(x) - v(ys[i])) / (x - ys[i])
        assert np.allclose(got[i], want, atol=1e-12)
    # the coincident entry collapses to the derivative
    assert np.allclose(got[2], v.deriv()(x), atol=1e-12)


def test_integral_ladder(gauss2):
    v_cl = pearson_V_hermite(pearson_alpha_parameters(2))
    for n in range(1, 7):
        for x in GRID:
            e, f = EF_coefficients(gauss2, v_cl, x, n)
            assert ef_ladder_residual(gauss2, e, f, x, n) < 1e-8


def test_closed_forms_match_integrals(gauss2):
    v_cl = pearson_V_hermite(pearson_alpha_parameters(2))
    for n in range(1, 7):
        for x in GRID:
            e, f = EF_coefficients(gauss2, v_cl, x, n)
            e_c, f_c = hermite_pearson_EF_closed(gauss2.H, gauss2.weight.A, x, n)
            assert rel_residual(e - e_c, e_c) < 1e-7
            assert rel_residual(f - f_c, f_c) < 1e-7


@pytest.mark.parametrize("fixture", ["gauss2", "freud2"])
def test_bridge_to_commutator_ladder(fixture, request):
    # integral ladder minus commutator ladder equals the potential moment
    # pair, for Gaussian and quartic weights alike
    fam = request.getfixturevalue(fixture)
    v_poly = pearson_V_numeric(fam.weight)
    for n in range(1, 6):
        for x in (-0.8, 0.4):
            e, f = EF_coefficients(fam, v_poly, x, n)
            assert ef_sum_relation_residual(fam, e, f, x, n) < 1e-8


@pytest.mark.parametrize("fixture", ["gauss2", "freud2"])
def test_rho_collapse(fixture, request):
    fam = request.getfixturevalue(fixture)
    for n in range(1, 6):
        for x in (-0.8, 0.4):
            assert rho_commutator_residual(fam, x, n) < 1e-8


def test_scalar_reduction(hermite1):
    v1 = pearson_V_hermite([1.0])
    for n in range(1, 7):
        e, f = EF_coefficients(hermite1, v1, 0.7, n)
        assert abs(complex(e[0, 0]) + n) < 1e-10
        assert abs(complex(f[0, 0])) < 1e-10
