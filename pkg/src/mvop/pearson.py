"""Pearson-type identities: derivative expansion and norm cross-relations.

When the weight satisfies W' = -W V with polynomial V, the derivative
of a monic family expands over lower degrees with banded coefficients,
P'(x, n) = n P(x, n-1) + M_{-2}(n) P(x, n-2) + ... + M_{-k}(n) P(x, n-k),
and the adjoint of d/dx under the matrix inner product is
-d/dx + V(x)*.  For the Gaussian ladder weight the band stops at
M_{-2}(n) = H(n) A* H(n-2)^{-1}, whose commutator with A telescopes
into a second-order recursion for the inverse norms.
"""

from __future__ import annotations

import numpy as np

from .linalg import rel_residual
from .ops import DiffOp
from .poly import MatrixPoly

__all__ = [
    "derivative_expansion",
    "derivative_difference_operator",
    "m2_closed_form",
    "m2_commutator_residual",
    "hrec2_residual",
    "dx_adjoint_residual",
    "lowering_dx_commutator_residual",
]


def derivative_expansion(fam, n: int, band: int | None = None) -> dict:
    """Coefficients {j: M_{-j}(n)} of P'(x, n) over P(x, n-j), j >= 1.

    Computed by projection: M_{-j}(n) = <P'_n, P_{n-j}> H(n-j)^{-1}.
    Projections onto degrees below n - band are verified to vanish and
    not returned; ``band`` defaults to the weight's Pearson degree.
    """
    if band is None:
        band = fam.weight.pearson_degree()
    dp = fam.P[n].deriv()
    out = {}
    for j in range(1, n + 1):
        coef = fam.inner(dp, fam.P[n - j]) @ fam.h_inv(n - j)
        if j <= band:
            out[j] = coef
        elif rel_residual(coef, fam.H[n]) > 1e-8:
            raise RuntimeError(
                f"derivative of P_{n} leaks beyond the expected band: "
                f"projection on degree {n - j} is not zero")
    return out


def derivative_difference_operator(fam, n_max: int | None = None,
                                   band: int | None = None) -> DiffOp:
    """The difference-operator image of d/dx on the family.

    Shift -1 carries n I; the deeper shifts carry the projective
    expansion coefficients.
    """
    if n_max is None:
        n_max = fam.n_max - 1
    if band is None:
        band = fam.weight.pearson_degree()
    dim = fam.dim
    tables = {-j: np.zeros((n_max + 1, dim, dim), dtype=complex)
              for j in range(1, band + 1)}
    for n in range(n_max + 1):
        exp = derivative_expansion(fam, n, band)
        for j, m in exp.items():
            tables[-j][n] = m
    eye_check = tables[-1] - np.arange(n_max + 1)[:, None, None] * np.eye(dim)
    if np.max(np.abs(eye_check)) > 1e-6 * max(1, n_max):
        raise RuntimeError("leading derivative coefficient is not n I")
    return DiffOp(tables, n_max, dim)


def m2_closed_form(h, a) -> list:
    """M_{-2}(n) = H(n) A* H(n-2)^{-1} for n >= 2 (entries 0, 1 are zero)."""
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    out = [np.zeros((dim, dim), dtype=complex)] * 2
    for n in range(2, len(h)):
        out.append(h[n] @ a.conj().T @ np.linalg.inv(h[n - 2]))
    return out


def m2_commutator_residual(fam, n: int, a=None) -> float:
    """Residual of [M_{-2}(n), A] = 2 ((n-1) C(n) - n C(n-1)), n >= 2."""
    a = fam.weight.A if a is None else np.asarray(a, dtype=complex)
    m2 = fam.H[n] @ a.conj().T @ np.linalg.inv(fam.H[n - 2])
    lhs = m2 @ a - a @ m2
    rhs = 2.0 * ((n - 1) * fam.C[n] - n * fam.C[n - 1])
    return rel_residual(lhs - rhs, lhs, rhs)


def hrec2_residual(h, a, n: int) -> float:
    """Residual of the inverse-norm cross-relation

    2(n+1) H(n+1)^{-1} - 2(n+2) H(n+2)^{-1} H(n+1) H(n)^{-1}
      + H(n+2)^{-1} A H(n+2) A* H(n)^{-1} - A* H(n)^{-1} A = 0.
    """
    a = np.asarray(a, dtype=complex)
    hi = [np.linalg.inv(np.asarray(m, dtype=complex)) for m in h]
    t1 = 2.0 * (n + 1) * hi[n + 1]
    t2 = -2.0 * (n + 2) * hi[n + 2] @ h[n + 1] @ hi[n]
    t3 = hi[n + 2] @ a @ h[n + 2] @ a.conj().T @ hi[n]
    t4 = -a.conj().T @ hi[n] @ a
    return rel_residual(t1 + t2 + t3 + t4, t1, t2, t3, t4)


def dx_adjoint_residual(fam, v_poly: MatrixPoly, n: int, m: int) -> float:
    """Residual of <P'_n, P_m> = <P_n, -P'_m + P_m V*>.

    V is the Pearson coefficient of the family's weight; its conjugate
    transpose enters because the adjoint is taken under the matrix
    inner product.
    """
    lhs = fam.inner(fam.P[n].deriv(), fam.P[m])
    g = -fam.P[m].deriv() + fam.P[m].matmul(v_poly.conj_t())
    rhs = fam.inner(fam.P[n], g)
    return rel_residual(lhs - rhs, lhs, rhs, fam.H[min(n, m)])


def lowering_dx_commutator_residual(fam, low: DiffOp, n: int,
                                    grid=(-1.5, 0.0, 1.5)) -> float:
    """Residual of [difference image of cal_D, difference image of d/dx]
    applied to the family: the two right actions commute iff their
    difference images do."""
    dx = derivative_difference_operator(fam)
    ab = low.compose(dx) - dx.compose(low)
    worst = 0.0
    for x in grid:
        val = ab.apply(fam, x, n)
        scale = max(1.0, float(np.max(np.abs(low.apply(fam, x, n)))),
                    float(np.max(np.abs(dx.apply(fam, x, n)))))
        worst = max(worst, float(np.max(np.abs(val))) / scale)
    return worst
