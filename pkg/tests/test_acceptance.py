"""Acceptance gate: ten end-to-end criteria at their contract tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.
"""

import time

import numpy as np
import pytest

from mvop import duran_ismail, deformation, hermite_fast, ladder, pearson
from mvop.linalg import rel_residual
from mvop.oracle import christoffel_darboux_residual, gram_schmidt_family
from mvop.suites import family, suite_report
from mvop.weights import (
    freud_weight,
    pearson_V_hermite,
    pearson_V_numeric,
    pearson_alpha_parameters,
    pearson_hermite_weight,
    scalar_weight,
)

GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


def report(num, label, worst, bound):
    ok = worst < bound
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'}  "
          f"{label}  (worst {worst:.3e} < {bound:g})")
    assert ok, f"criterion {num:02d}: {label}: {worst:.3e} >= {bound:g}"


def test_criterion_01_oracle_validity():
    t0 = time.perf_counter()
    fam = gram_schmidt_family(scalar_weight([0.0, 0.0, 1.0]), 10)
    elapsed = time.perf_counter() - t0
    worst = abs(fam.H[0][0, 0] / np.sqrt(np.pi) - 1.0) / 1e-12
    for n in range(11):
        if n < 10:
            worst = max(worst, abs(fam.B[n][0, 0]) / 1e-10)
        if n:
            worst = max(worst, abs(fam.C[n][0, 0] / (n / 2.0) - 1.0) / 1e-9)
    worst = max(worst, elapsed / 5.0)
    report(1, "scalar Gaussian oracle: B = 0, C = n/2, H(0) = sqrt(pi), "
              "built in under 5 s", worst, 1.0)


def test_criterion_02_ladder_relations():
    worst = 0.0
    for name in ("hermite-1", "hermite-2", "freud-1", "freud-2"):
        fam = family(name)
        m_low = ladder.lowering_operator(fam)
        m_raise = ladder.raising_operator(fam)
        for n in range(9):
            for x in GRID:
                worst = max(worst, *ladder.ladder_residual(fam, x, n,
                                                           m_low, m_raise))
    report(2, "lowering and raising relations on Gaussian and quartic "
              "families, n <= 8", worst, 1e-8)


def test_criterion_03_string_relations():
    worst = 0.0
    for name in ("hermite-1", "hermite-2", "freud-1", "freud-2"):
        fam = family(name)
        for r1, r2 in ladder.string_residuals(fam, 1, 8):
            worst = max(worst, r1, r2)
        for n in range(1, 9):
            worst = max(worst, ladder.zero_coeff_residual(fam, n))
    for name in ("hermite-2", "hermite-3"):
        fam = family(name)
        for n in range(1, 9):
            worst = max(worst, ladder.hermite_telescope_residual(fam, n))
    report(3, "string, zero-coefficient and telescope identities", worst, 1e-8)


def test_criterion_04_discrete_painleve():
    worst = 0.0
    fam0 = family("freud-1")
    c0 = [fam0.C[n] for n in range(9)]
    fam1 = family("quartic-t1")
    c1 = [fam1.C[n] for n in range(8)]
    for n in range(1, 7):
        worst = max(worst, ladder.dpainleve1_residual(c0, 0.0, n))
        worst = max(worst, ladder.dpainleve1_residual(c1, 1.0, n))
    report(4, "discrete Painleve recursion for the quartic weight, "
              "t in {0, 1}, n = 1..6", worst, 1e-6)


def test_criterion_05_fast_pipeline():
    worst = 0.0
    for dim, name in ((2, "gauss-ladder-2"), (3, "gauss-ladder-3")):
        oracle = family(name)
        fast = hermite_fast.fast_family(pearson_alpha_parameters(dim), 10)
        for n in range(11):
            worst = max(worst, rel_residual(fast.H[n] - oracle.H[n],
                                            oracle.H[n]),
                        rel_residual(fast.B[n] - oracle.B[n], oracle.B[n]),
                        rel_residual(fast.C[n] - oracle.C[n], oracle.C[n])
                        if n else 0.0)
            for x in (-1.2, 0.4, 1.7):
                worst = max(worst, rel_residual(
                    fast.value(x, n) - oracle.value(x, n),
                    oracle.value(x, n)))
    w3 = pearson_hermite_weight(3)
    t0 = time.perf_counter()
    gram_schmidt_family(w3, 10)
    oracle_ms = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    hermite_fast.fast_family(pearson_alpha_parameters(3), 10, check_h0=False)
    fast_ms = (time.perf_counter() - t0) * 1e3
    print(f"criterion 05 timing: oracle {oracle_ms:.1f} ms, "
          f"recursion {fast_ms:.1f} ms at N = 3, n_max = 10")
    assert fast_ms <= oracle_ms
    report(5, "recursion pipeline matches the oracle at N = 2, 3 and "
              "is at least as fast", worst, 1e-8)


def test_criterion_06_oscillator_algebra():
    fam = family("gauss-ladder-2")
    worst = 0.0
    for n in range(9):
        for x in GRID:
            worst = max(worst, hermite_fast.second_order_D_check(fam, x, n))
            worst = max(worst, hermite_fast.casimir_check(fam, x, n))
    worst = max(worst, hermite_fast.casimir_gamma_commutator(fam))
    worst = max(worst, max(hermite_fast.oscillator_bracket_checks(
        pearson_alpha_parameters(2)).values()))
    report(6, "second-order eigen equation, bracket algebra and "
              "Casimir identities, n <= 8", worst, 1e-8)


def test_criterion_07_pearson_identities():
    worst = 0.0
    for dim in (1, 2, 3):
        w = pearson_hermite_weight(dim) if dim > 1 else scalar_weight([0, 0, 1.0])
        v_cl = pearson_V_hermite(pearson_alpha_parameters(dim)
                                 if dim > 1 else [1.0])
        for x in GRID:
            worst = max(worst, duran_ismail.pearson_residual(w, v_cl, x) / 1e-10)
    wq = freud_weight(2, 1.0, 1.0)
    v_fit = pearson_V_numeric(wq)
    assert v_fit.degree == 3
    for x in GRID:
        worst = max(worst, duran_ismail.pearson_residual(wq, v_fit, x) / 1e-8)
    fam = family("gauss-ladder-2")
    h = [fam.H[k] for k in range(11)]
    m2 = pearson.m2_closed_form(h, fam.weight.A)
    for n in range(2, 9):
        exp = pearson.derivative_expansion(fam, n)
        worst = max(worst, np.abs(m2[n] - exp[2]).max() / 1e-8)
        worst = max(worst, pearson.m2_commutator_residual(fam, n) / 1e-8)
        worst = max(worst, pearson.hrec2_residual(h, fam.weight.A, n) / 1e-7)
    report(7, "weight-level Pearson identity, two-step coefficient and "
              "second norm recursion", worst, 1.0)


def test_criterion_08_deformation_flows():
    worst = 0.0

    def toda(t):
        w = pearson_hermite_weight(2)
        return w.with_potential(w.v + np.polynomial.Polynomial([0.0, t]))

    def langmuir(t):
        w = pearson_hermite_weight(2)
        return w.with_potential(w.v + np.polynomial.Polynomial([0.0, 0.0, t]))

    for mk, u in ((toda, [0.0, 1.0]), (langmuir, [0.0, 0.0, 1.0])):
        res = deformation.finite_diff_check(mk, u, 0.1)
        worst = max(worst, res["B"] / 1e-6, res["C"] / 1e-6)
    fam = family("hermite-2")
    tri = deformation.BlockTridiag.from_family(fam, 9)
    for j in (1, 2):
        worst = max(worst, deformation.lax_vs_lattice(fam, j, 5) / 1e-8)
        worst = max(worst, deformation.lax_minus_consistency(tri, j, 5) / 1e-10)
    report(8, "finite-difference flow derivatives and the Lax bracket "
              "match the lattice equations", worst, 1.0)


def test_criterion_09_integral_ladder():
    fam = family("gauss-ladder-2")
    v_cl = pearson_V_hermite(pearson_alpha_parameters(2))
    worst = 0.0
    for n in range(1, 7):
        for x in GRID:
            e, f = duran_ismail.EF_coefficients(fam, v_cl, x, n)
            worst = max(worst, duran_ismail.ef_ladder_residual(
                fam, e, f, x, n) / 1e-8)
            e_c, f_c = duran_ismail.hermite_pearson_EF_closed(
                fam.H, fam.weight.A, x, n)
            denom = max(1.0, np.abs(e_c).max(), np.abs(f_c).max())
            worst = max(worst, np.abs(e - e_c).max() / denom / 1e-7,
                        np.abs(f - f_c).max() / denom / 1e-7)
    for x, y in ((0.3, -0.8), (1.2, 0.5)):
        for n in (3, 6):
            worst = max(worst, christoffel_darboux_residual(
                fam, x, y, n) / 1e-8)
    report(9, "integral ladder coefficients, their closed forms and the "
              "kernel telescope", worst, 1.0)


def test_criterion_10_guards_and_full_verification():
    worst = 0.0
    for dim in (2, 3):
        # the closed first norm refuses to return silently wrong values
        hermite_fast.h0_closed_form(pearson_alpha_parameters(dim),
                                    check=True, check_tol=1e-10)
    t0 = time.perf_counter()
    rep = suite_report("all")
    elapsed = time.perf_counter() - t0
    assert rep["passed"], f"failing checks: {rep['failed']}"
    worst = max(worst, elapsed / 120.0)
    print(f"criterion 10 timing: verify all ({rep['n_checks']} checks) "
          f"in {elapsed:.1f} s")
    report(10, "closed-form norm guard and the full verification suite "
               "under 120 s", worst, 1.0)
