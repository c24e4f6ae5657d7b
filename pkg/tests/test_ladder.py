"""Ladder operators, string relations and the discrete Painleve recursion."""

import numpy as np
import pytest

from mvop.ladder import (
    adjoint_pairing_residual,
    apply_D,
    cal_d,
    commutator_checks,
    dpainleve1_residual,
    hermite_telescope_residual,
    ladder_residual,
    lowering_operator,
    raising_operator,
    string_residuals,
    zero_coeff_residual,
)

GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


@pytest.mark.parametrize("fixture", ["hermite1", "hermite2", "freud1", "freud2"])
def test_ladder_residuals(fixture, request):
    fam = request.getfixturevalue(fixture)
    m_low = lowering_operator(fam)
    m_raise = raising_operator(fam)
    for n in range(7):
        for x in GRID:
            r_low, r_raise = ladder_residual(fam, x, n, m_low, m_raise)
            assert r_low < 1e-8
            assert r_raise < 1e-8


def test_scalar_hermite_ladder_closed_form(hermite1):
    # lowering is n per step down, raising is the constant 2 per step up
    low = lowering_operator(hermite1)
    hi = raising_operator(hermite1)
    assert low.band == (-1, -1)
    assert hi.band == (1, 1)
    for n in range(1, 6):
        assert low.coefficient(-1, n)[0, 0] == pytest.approx(n, rel=1e-10)
    for n in range(6):
        assert hi.coefficient(1, n)[0, 0] == pytest.approx(2.0, rel=1e-10)


def test_apply_D_matches_polynomial_image(hermite2):
    a = hermite2.weight.A
    for n in (1, 4):
        for x in (-0.8, 0.6):
            want = cal_d(hermite2.P[n], a)(x)
            assert np.allclose(apply_D(hermite2, x, n), want, atol=1e-13)


@pytest.mark.parametrize("fixture", ["hermite1", "hermite2", "freud1", "freud2"])
def test_string_relations(fixture, request):
    fam = request.getfixturevalue(fixture)
    for r1, r2 in string_residuals(fam, 1, 7):
        assert r1 < 1e-8
        assert r2 < 1e-8


@pytest.mark.parametrize("fixture", ["hermite2", "freud2"])
def test_zero_coefficient_relation(fixture, request):
    fam = request.getfixturevalue(fixture)
    for n in range(1, 7):
        assert zero_coeff_residual(fam, n) < 1e-8


def test_hermite_telescope(hermite2, hermite3):
    for fam in (hermite2, hermite3):
        for n in range(1, 7):
            assert hermite_telescope_residual(fam, n) < 1e-8


def test_adjoint_pairing(hermite2, freud2):
    for fam in (hermite2, freud2):
        m_low = lowering_operator(fam)
        for n in range(1, 6):
            assert adjoint_pairing_residual(fam, m_low, n, n - 1) < 1e-9


def test_commutator_tower_gaussian(hermite2):
    out = commutator_checks(hermite2.weight.A, hermite2.weight.v)
    assert set(out) == {"bracket_depth_1", "sum_is_v_prime"}
    assert max(out.values()) < 1e-12


def test_commutator_tower_quartic(freud2):
    out = commutator_checks(freud2.weight.A, freud2.weight.v)
    # quartic potential takes three brackets to reach a constant
    assert "bracket_depth_3" in out
    assert max(out.values()) < 1e-12


def test_dpainleve_quartic(freud1):
    c_seq = [freud1.C[n] for n in range(9)]
    for n in range(1, 7):
        assert dpainleve1_residual(c_seq, 0.0, n) < 1e-6


def test_dpainleve_with_gaussian_term(quartic_t1):
    c_seq = [quartic_t1.C[n] for n in range(8)]
    for n in range(1, 6):
        assert dpainleve1_residual(c_seq, 1.0, n) < 1e-6


def test_dpainleve_detects_wrong_parameter(freud1):
    # the recursion pins the quadratic coefficient of the potential
    c_seq = [freud1.C[n] for n in range(9)]
    assert dpainleve1_residual(c_seq, 0.5, 3) > 1e-2
