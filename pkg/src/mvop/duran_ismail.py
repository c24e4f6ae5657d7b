"""Integral-kernel ladder coefficients in the Duran-Ismail style.

For a weight with Pearson coefficient V (W' = -W V), the derivative of
the family satisfies P'(x, n) = F(x, n) P(x, n) - E(x, n) P(x, n-1)
where E and F are divided-difference moments of V against the family.
The divided difference (V(x) - V(y))/(x - y) is expanded coefficient
by coefficient, never formed by pointwise division, so coincident
points cost nothing.
"""

from __future__ import annotations

import numpy as np

from .linalg import rel_residual
from .poly import MatrixPoly

__all__ = [
    "rho",
    "divided_difference_values",
    "pearson_residual",
    "EF_coefficients",
    "hermite_pearson_EF_closed",
    "ef_ladder_residual",
    "ef_sum_relation_residual",
    "rho_commutator_residual",
]


def rho(w, x: float) -> np.ndarray:
    """W(x)^{-1} A W(x); polynomial in x whenever ad_{A*} kills A."""
    wx = w(float(x))
    return np.linalg.inv(wx) @ w.A @ wx


def divided_difference_values(v_poly: MatrixPoly, x: float, ys: np.ndarray) -> np.ndarray:
    """(V(x) - V(y))/(x - y) at fixed x over an array of y, shape (K, N, N).

    Uses (x^m - y^m)/(x - y) = sum_{a+b=m-1} x^a y^b termwise.
    """
    ys = np.asarray(ys, dtype=float)
    dim = v_poly.dim
    out = np.zeros((ys.size, dim, dim), dtype=complex)
    for m in range(1, v_poly.coeffs.shape[0]):
        geom = np.zeros(ys.size)
        for a in range(m):
            geom += x**a * ys ** (m - 1 - a)
        out += geom[:, None, None] * v_poly.coeffs[m]
    return out


def pearson_residual(w, v_poly: MatrixPoly, x: float, h: float = 1e-3) -> float:
    """Residual of W'(x) = -W(x) V(x), with W' from differences.

    Central differences at steps h and h/2 are Richardson-combined to
    fourth order, which keeps the derivative independent of the
    analytic log-derivative formulas that V is checked against.
    """
    def central(step):
        return (w(x + step) - w(x - step)) / (2.0 * step)

    dw = (4.0 * central(h / 2) - central(h)) / 3.0
    rhs = -w(float(x)) @ v_poly(float(x))
    return rel_residual(dw - rhs, dw, rhs)


def EF_coefficients(fam, v_poly: MatrixPoly, x: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(E(x, n), F(x, n)) from the defining integrals.

    E(x,n) H(n-1) = -int P_n(y) W(y) K_V(x,y) P_n(y)* dy
    F(x,n) H(n-1) = -int P_n(y) W(y) K_V(x,y) P_{n-1}(y)* dy
    with K_V the divided difference of V.
    """
    rule = fam.rule
    w_vals = fam._w_vals if fam._w_vals is not None else fam.weight(rule.nodes)
    kv = divided_difference_values(v_poly, x, rule.nodes)
    pn = fam.P[n](rule.nodes)
    pm = fam.P[n - 1](rule.nodes)
    front = pn @ w_vals @ kv
    hin = fam.h_inv(n - 1)
    e = -np.einsum("k,kab->ab", rule.weights,
                   front @ np.conj(np.swapaxes(pn, 1, 2))) @ hin
    f = -np.einsum("k,kab->ab", rule.weights,
                   front @ np.conj(np.swapaxes(pm, 1, 2))) @ hin
    return e, f


def hermite_pearson_EF_closed(h, a, x: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed E, F for the Gaussian ladder weight.

    F(n) = -H(n) A* H(n-1)^{-1} carries no x; E collects the shift and
    the quadratic A-corrections.
    """
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    hn = np.asarray(h[n], dtype=complex)
    hin = np.linalg.inv(np.asarray(h[n - 1], dtype=complex))
    g = hn @ a.conj().T @ hin
    f = -g
    e = (-x * g - n * np.eye(dim, dtype=complex)
         + 0.5 * g @ a + 0.5 * hn @ (a.conj().T @ a.conj().T) @ hin)
    return e, f


def ef_ladder_residual(fam, e, f, x: float, n: int) -> float:
    """Residual of P'(x, n) = F P(x, n) - E P(x, n-1)."""
    lhs = fam.P[n].deriv()(float(x))
    rhs = f @ fam.value(x, n) - e @ fam.value(x, n - 1)
    return rel_residual(lhs - rhs, lhs, rhs)


def _potential_moments(fam, x: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    # int P_n W S_v P_{n-1}* dy and int P_n W S_v P_n* dy with S_v the
    # scalar divided difference of v'
    rule = fam.rule
    w = fam.weight
    w_vals = fam._w_vals if fam._w_vals is not None else w(rule.nodes)
    vp = MatrixPoly.from_scalar(w.v.deriv().coef, w.dim)
    sv = divided_difference_values(vp, x, rule.nodes)
    pn = fam.P[n](rule.nodes)
    pm = fam.P[n - 1](rule.nodes)
    front = pn @ w_vals @ sv
    g_f = np.einsum("k,kab->ab", rule.weights,
                    front @ np.conj(np.swapaxes(pm, 1, 2)))
    g_e = np.einsum("k,kab->ab", rule.weights,
                    front @ np.conj(np.swapaxes(pn, 1, 2)))
    return g_f, g_e


def ef_sum_relation_residual(fam, e, f, x: float, n: int) -> float:
    """Residual of the bridge between the two ladder forms,

    F P_n(x) - E P_{n-1}(x) - [A, P_n(x)]
        = -G_F H(n-1)^{-1} P_n(x) + G_E H(n-1)^{-1} P_{n-1}(x),

    with G_F = int P_n W S_v P_{n-1}* dy, G_E the same against P_n*,
    and S_v the scalar divided difference of v'.  Splitting the kernel
    of E and F as S_v I minus the divided difference of rho and
    collapsing the rho part with the Christoffel-Darboux formula leaves
    exactly the commutator with A, so the potential moments G_E, G_F
    account for the whole difference between the integral ladder and
    the commutator ladder.
    """
    w = fam.weight
    g_f, g_e = _potential_moments(fam, x, n)
    hin = fam.h_inv(n - 1)
    pnx = fam.value(x, n)
    pmx = fam.value(x, n - 1)
    lhs = f @ pnx - e @ pmx - (w.A @ pnx - pnx @ w.A)
    rhs = -g_f @ hin @ pnx + g_e @ hin @ pmx
    return rel_residual(lhs - rhs, lhs, rhs)


def rho_commutator_residual(fam, x: float, n: int) -> float:
    """Residual of the Christoffel-Darboux collapse of the rho kernel,

    G_F^rho H(n-1)^{-1} P_n(x) - G_E^rho H(n-1)^{-1} P_{n-1}(x)
        = A P_n(x) - P_n(x) A,

    where G^rho are the moments of (rho(x) - rho(y))/(x - y) against
    P_{n-1}* and P_n*.  The left side is the kernel-polynomial
    expansion of the commutator, so this exercises rho and the
    Christoffel-Darboux formula together.
    """
    rule = fam.rule
    w = fam.weight
    w_vals = fam._w_vals if fam._w_vals is not None else w(rule.nodes)
    r_x = rho(w, x)
    r_y = np.stack([rho(w, y) for y in rule.nodes])
    s_rho = (r_x[None] - r_y) / (x - rule.nodes)[:, None, None]
    pn = fam.P[n](rule.nodes)
    pm = fam.P[n - 1](rule.nodes)
    front = pn @ w_vals @ s_rho
    g_f = np.einsum("k,kab->ab", rule.weights,
                    front @ np.conj(np.swapaxes(pm, 1, 2)))
    g_e = np.einsum("k,kab->ab", rule.weights,
                    front @ np.conj(np.swapaxes(pn, 1, 2)))
    hin = fam.h_inv(n - 1)
    pnx = fam.value(x, n)
    pmx = fam.value(x, n - 1)
    lhs = g_f @ hin @ pnx - g_e @ hin @ pmx
    rhs = w.A @ pnx - pnx @ w.A
    return rel_residual(lhs - rhs, lhs, rhs)
