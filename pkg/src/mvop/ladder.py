"""First-order ladder structure of exponential weights.

The right-acting derivative-plus-shear operator cal_D: P -> P' + P A
maps the monic family into its own linear span with a banded
difference-operator image M (the lowering operator); its H-adjoint
raises.  The zero-shift coefficient of v'(L) and the commutators of
B(n), C(n) with A satisfy string relations that are tested here
verbatim, together with the scalar discrete Painleve I reduction for
the quartic potential.

Operator products act on the right throughout: P . (S T) = (P . S) . T.
"""

from __future__ import annotations

import numpy as np

from .linalg import rel_residual
from .ops import DiffOp, op_poly, recurrence_operator
from .poly import MatrixPoly

__all__ = [
    "cal_d",
    "cal_d_dagger",
    "apply_D",
    "apply_D_dagger",
    "potential_image",
    "lowering_operator",
    "raising_operator",
    "ladder_residual",
    "adjoint_pairing_residual",
    "string_residuals",
    "zero_coeff_residual",
    "hermite_telescope_residual",
    "dpainleve1_residual",
    "commutator_checks",
]


# -- exact right action on matrix polynomials ---------------------------

def cal_d(p: MatrixPoly, a) -> MatrixPoly:
    """P . cal_D = P' + P A."""
    return p.deriv() + p.rmul(a)


def cal_d_dagger(p: MatrixPoly, a, v) -> MatrixPoly:
    """P . cal_D^dagger = -P' - P A + v'(x) P."""
    return -cal_d(p, a) + p.mul_scalar_poly(v.deriv().coef)


def apply_D(fam, x, n: int, a=None) -> np.ndarray:
    """(P . cal_D)(x, n) evaluated from the stored polynomial."""
    a = fam.weight.A if a is None else a
    return cal_d(fam.P[n], a)(x)


def apply_D_dagger(fam, x, n: int, a=None, v=None) -> np.ndarray:
    a = fam.weight.A if a is None else a
    v = fam.weight.v if v is None else v
    return cal_d_dagger(fam.P[n], a, v)(x)


# -- the lowering operator and its adjoint ------------------------------

def potential_image(fam, v=None) -> DiffOp:
    """v'(L) for the family's Jacobi operator L."""
    v = fam.weight.v if v is None else v
    return op_poly(recurrence_operator(fam), v.deriv().coef)


def lowering_operator(fam, a=None, v=None) -> DiffOp:
    """M with P . cal_D = M . P.

    The zero-shift coefficient is the constant matrix A; the strictly
    negative shifts are those of v'(L).
    """
    a = fam.weight.A if a is None else a
    v = fam.weight.v if v is None else v
    g = potential_image(fam, v)
    coeff = {0: np.broadcast_to(np.asarray(a, dtype=complex),
                                (g.n_max + 1, fam.dim, fam.dim)).copy()}
    for j in g.coeff:
        if j < 0:
            coeff[j] = g.coeff[j]
    return DiffOp(coeff, g.n_max, fam.dim)


def raising_operator(fam, a=None, v=None) -> DiffOp:
    """M^dagger = H(n) M* H(n)^{-1}, with P . cal_D^dagger = M^dagger . P."""
    return lowering_operator(fam, a, v).dagger(fam.H)


def ladder_residual(fam, x, n: int, m_low: DiffOp | None = None,
                    m_raise: DiffOp | None = None) -> tuple[float, float]:
    """Residuals of the lowering and raising relations at (x, n)."""
    m_low = lowering_operator(fam) if m_low is None else m_low
    m_raise = m_low.dagger(fam.H) if m_raise is None else m_raise
    lhs_low = apply_D(fam, x, n)
    rhs_low = m_low.apply(fam, x, n)
    lhs_raise = apply_D_dagger(fam, x, n)
    rhs_raise = m_raise.apply(fam, x, n)
    return (rel_residual(lhs_low - rhs_low, lhs_low, rhs_low),
            rel_residual(lhs_raise - rhs_raise, lhs_raise, rhs_raise))


def adjoint_pairing_residual(fam, m_op: DiffOp, n: int, m: int) -> float:
    """Residual of <M . P_n, P_m> = <P_n, M^dagger . P_m>."""
    dim = fam.dim
    lhs = np.zeros((dim, dim), dtype=complex)
    for j in m_op.coeff:
        if 0 <= n + j <= fam.n_max:
            lhs += m_op.coefficient(j, n) @ fam.inner(fam.P[n + j], fam.P[m])
    mdag = m_op.dagger(fam.H)
    rhs = np.zeros((dim, dim), dtype=complex)
    for j in mdag.coeff:
        if 0 <= m + j <= fam.n_max:
            rhs += fam.inner(fam.P[n], fam.P[m + j]) @ mdag.coefficient(j, m).conj().T
    return rel_residual(lhs - rhs, lhs, rhs, fam.H[min(n, m)])


# -- string relations ----------------------------------------------------

def string_residuals(fam, n_lo: int = 0, n_hi: int | None = None,
                     a=None, v=None) -> list[tuple[float, float]]:
    """Residuals of the two string relations for n in [n_lo, n_hi].

    First relation (n >= 0):
        [B(n), A] = I + (v'(L))_{-1}(n) - (v'(L))_{-1}(n+1)
    Second relation (n >= 1):
        [C(n), A] = C(n) (v'(L))_0(n-1) - (v'(L))_0(n) C(n)
    """
    a = fam.weight.A if a is None else np.asarray(a, dtype=complex)
    g = potential_image(fam, v)
    if n_hi is None:
        n_hi = g.n_max - 1
    eye = np.eye(fam.dim, dtype=complex)
    out = []
    for n in range(n_lo, n_hi + 1):
        lhs1 = fam.B[n] @ a - a @ fam.B[n]
        rhs1 = eye + g.coefficient(-1, n) - g.coefficient(-1, n + 1)
        r1 = rel_residual(lhs1 - rhs1, lhs1, rhs1)
        if n >= 1:
            lhs2 = fam.C[n] @ a - a @ fam.C[n]
            rhs2 = fam.C[n] @ g.coefficient(0, n - 1) - g.coefficient(0, n) @ fam.C[n]
            r2 = rel_residual(lhs2 - rhs2, lhs2, rhs2)
        else:
            r2 = 0.0
        out.append((r1, r2))
    return out


def zero_coeff_residual(fam, n: int, a=None, v=None) -> float:
    """Residual of (v'(L))_0(n) = A + H(n) A* H(n)^{-1}."""
    a = fam.weight.A if a is None else np.asarray(a, dtype=complex)
    g = potential_image(fam, v)
    lhs = g.coefficient(0, n)
    rhs = a + fam.H[n] @ a.conj().T @ fam.h_inv(n)
    return rel_residual(lhs - rhs, lhs, rhs)


def hermite_telescope_residual(fam, n: int, a=None) -> float:
    """Residual of sum_{k<n} [B(k), A] = n I - 2 C(n) (Gaussian potentials)."""
    a = fam.weight.A if a is None else np.asarray(a, dtype=complex)
    acc = np.zeros((fam.dim, fam.dim), dtype=complex)
    for k in range(n):
        acc += fam.B[k] @ a - a @ fam.B[k]
    rhs = n * np.eye(fam.dim, dtype=complex) - 2.0 * fam.C[n]
    return rel_residual(acc - rhs, acc, rhs)


def dpainleve1_residual(c_seq, t: float, n: int) -> float:
    """|n - 4 C(n) (C(n-1) + C(n) + C(n+1) + 2t)| for scalar quartic weights."""
    def val(k):
        m = np.asarray(c_seq[k])
        return complex(m.reshape(-1)[0])
    lhs = 4.0 * val(n) * (val(n - 1) + val(n) + val(n + 1) + 2.0 * t)
    return abs(n - lhs)


# -- differential-operator commutators ----------------------------------

def _sample_polys(dim: int) -> list[MatrixPoly]:
    rng = np.random.default_rng(7)
    cubic = MatrixPoly(rng.standard_normal((4, dim, dim))
                       + 1j * rng.standard_normal((4, dim, dim)))
    return [MatrixPoly.monomial(2, dim), cubic]


def commutator_checks(a, v, grid=(-1.5, -0.5, 0.0, 0.5, 1.5)) -> dict:
    """Verify the commutator tower of cal_D and cal_D^dagger on samples.

    [cal_D^dagger, cal_D] multiplies by v''; each further bracket with
    cal_D strips one more derivative from the potential.  Returns a
    dict of max residuals keyed by bracket depth.
    """
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]

    def d(p):
        return cal_d(p, a)

    def ddag(p):
        return cal_d_dagger(p, a, v)

    def bracket(f, g):
        return lambda p: g(f(p)) - f(g(p))

    out = {}
    level = bracket(ddag, d)
    expect = v.deriv(2)
    depth = 1
    while True:
        worst = 0.0
        for p in _sample_polys(dim):
            got = level(p)
            want = p.mul_scalar_poly(expect.coef)
            for x in grid:
                worst = max(worst, rel_residual(got(x) - want(x), got(x), want(x)))
        out[f"bracket_depth_{depth}"] = worst
        if expect.degree() == 0:
            break
        level = bracket(level, d)
        expect = expect.deriv()
        depth += 1

    worst = 0.0
    vp = v.deriv()
    for p in _sample_polys(dim):
        got = d(p) + ddag(p)
        want = p.mul_scalar_poly(vp.coef)
        for x in grid:
            worst = max(worst, rel_residual(got(x) - want(x), got(x), want(x)))
    out["sum_is_v_prime"] = worst
    return out
