"""Quadrature-free pipeline for the Gaussian alpha-weight families.

Three steps, none of which touches an integral:

1. the zeroth norm H(0) in closed form (cross-checked once against a
   quadrature moment, since the closed form is easy to get wrong by a
   scalar prefactor);
2. the norm recursion in n, which together with
   2 B(n) = A + H(n) A* H(n)^{-1} replaces Gram-Schmidt;
3. a downward recursion in the row index for the coefficients
   xi(n, j, k) of the conjugated functions
   Q(x, n)_{jk} = xi(n, j, k) H_{n+j-k}(x) e^{-x^2/2},
   from which P(x, n) = Q(x, n) L(x)^{-1} e^{x^2/2} is assembled by a
   triangular solve (the Gaussians cancel exactly and are never
   formed).

The degree index enters Q entrywise through Hermite functions, so the
family also solves a Schroedinger equation entry by entry; those
oscillator-algebra identities are verified against oracle families
here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt, pi

import numpy as np
from numpy.polynomial.hermite import hermval

from .linalg import rel_residual, unit_lower_inverse
from .ops import DiffOp
from .poly import MatrixPoly
from .quadrature import build_quadrature
from .weights import hermite_alpha_weight, hermite_lower_factor

__all__ = [
    "h0_closed_form",
    "norm_recursion",
    "recurrence_from_norms",
    "xi_table",
    "assemble_P",
    "FastHermiteFamily",
    "fast_family",
    "second_order_D_check",
    "oscillator_bracket_checks",
    "casimir_difference_operator",
    "casimir_check",
    "conjugation_checks",
]


def h0_closed_form(alpha, check: bool = True, check_tol: float = 1e-10) -> np.ndarray:
    """Diagonal zeroth norm of the alpha-weight.

    H(0)_{jj} = sqrt(pi) 2^j a_j^2 sum_{l=1..j} 2^{-l} / ((j-l)! a_l^2)
    (1-based j).  The sqrt(pi) prefactor comes from the Gaussian moment
    of the squared Hermite polynomials; with ``check`` the value is
    compared against the quadrature moment of the weight and a mismatch
    aborts.
    """
    alpha = np.asarray(alpha, dtype=float)
    n = alpha.size
    diag = np.zeros(n)
    for j in range(1, n + 1):
        s = sum(2.0 ** (-l) / (factorial(j - l) * alpha[l - 1] ** 2)
                for l in range(1, j + 1))
        diag[j - 1] = sqrt(pi) * 2.0**j * alpha[j - 1] ** 2 * s
    h0 = np.diag(diag).astype(complex)
    if check:
        w = hermite_alpha_weight(alpha)
        rule = build_quadrature(w, 1)
        moment = rule.integrate_matrix(w(rule.nodes))
        err = rel_residual(h0 - moment, h0, moment)
        if err > check_tol:
            raise RuntimeError(
                f"closed-form H(0) disagrees with the quadrature moment "
                f"({err:.2e} relative); refusing to seed the recursion")
    return h0


def norm_recursion(h0, a, n_max: int) -> list:
    """Norms H(0..n_max) from the quadrature-free recursion.

    H(n+1) = H(n)/2 + H(n) H(n-1)^{-1} H(n)
             - H(n) A* H(n)^{-1} A H(n)/4 + A H(n) A*/4,
    with the middle term absent at n = 0.  The linear term of the
    potential never enters; it only shifts B(n).
    """
    h0 = np.asarray(h0, dtype=complex)
    astar = np.asarray(a, dtype=complex).conj().T
    a = np.asarray(a, dtype=complex)
    hs = [h0]
    for n in range(n_max):
        h = hs[n]
        hinv = np.linalg.inv(h)
        nxt = 0.5 * h - 0.25 * (h @ astar @ hinv @ a @ h) + 0.25 * (a @ h @ astar)
        if n >= 1:
            nxt = nxt + h @ np.linalg.inv(hs[n - 1]) @ h
        hs.append(nxt)
    return hs


def recurrence_from_norms(h, a, t: float = 0.0) -> tuple[list, list]:
    """B(n), C(n) from the norm sequence.

    2 B(n) = A + H(n) A* H(n)^{-1} - t I for the potential x^2 + t x;
    C(n) = H(n) H(n-1)^{-1} with C(0) = 0.
    """
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    eye = np.eye(dim, dtype=complex)
    b = [0.5 * (a + h[n] @ a.conj().T @ np.linalg.inv(h[n]) - t * eye)
         for n in range(len(h))]
    c = [np.zeros((dim, dim), dtype=complex)]
    c += [h[n] @ np.linalg.inv(h[n - 1]) for n in range(1, len(h))]
    return b, c


def xi_table(alpha, h, n: int) -> np.ndarray:
    """Coefficients xi(n, j, k) as an (N, N) array (0-based rows/cols).

    Row N comes from the closed boundary formula; rows below follow
    the downward recursion driven by the diagonal norm ratios.  The
    zero pattern xi = 0 iff n + j - k < 0 (1-based j, k) is enforced
    exactly.
    """
    alpha = np.asarray(alpha, dtype=float)
    nn = alpha.size
    xi = np.zeros((nn, nn))

    def a(j):  # 1-based
        return alpha[j - 1]

    if n == 0:
        for j in range(1, nn + 1):
            for k in range(1, j + 1):
                xi[j - 1, k - 1] = a(j) / (factorial(j - k) * a(k))
        return xi

    hd = [np.real(np.diagonal(np.asarray(m))) for m in h]

    def hn(m, j):  # H(m)_{jj}, 1-based j
        return hd[m][j - 1]

    for k in range(1, nn + 1):
        xi[nn - 1, k - 1] = 2.0 ** (-n) * a(nn) / (factorial(nn - k) * a(k))
    if nn >= 2:
        for k in range(1, nn + 1):
            coef = (a(nn - 1) / a(nn)) * ((n + nn - k)
                                          - 2.0 * hn(n, nn) / hn(n - 1, nn))
            xi[nn - 2, k - 1] = coef * xi[nn - 1, k - 1]
    for j in range(nn - 1, 1, -1):
        for k in range(1, nn + 1):
            c1 = (a(j - 1) / a(j)) * (n + j - k) \
                + 2.0 * a(j - 1) * a(j + 1) ** 2 / a(j) ** 3 * hn(n, j) / hn(n, j + 1) \
                - 2.0 * (a(j - 1) / a(j)) * hn(n, j) / hn(n - 1, j)
            c2 = 2.0 * (n + j - k + 1) * a(j - 1) * a(j + 1) / a(j) ** 2 \
                * hn(n, j) / hn(n, j + 1)
            xi[j - 2, k - 1] = c1 * xi[j - 1, k - 1] - c2 * xi[j, k - 1]
    for j in range(1, nn + 1):
        for k in range(1, nn + 1):
            if n + j - k < 0:
                xi[j - 1, k - 1] = 0.0
    return xi


def _hermite_values(x: float, m_max: int) -> np.ndarray:
    """Physicists' Hermite values H_0(x) .. H_{m_max}(x)."""
    out = np.empty(m_max + 1)
    for m in range(m_max + 1):
        basis = np.zeros(m + 1)
        basis[m] = 1.0
        out[m] = hermval(x, basis)
    return out


def assemble_P(xi: np.ndarray, alpha, x: float, n: int) -> np.ndarray:
    """P(x, n) from a xi table: Gaussian-free Q times L(x)^{-1}.

    Q(x,n)_{jk} e^{x^2/2} = xi(n,j,k) H_{n+j-k}(x), and the matching
    e^{-x^2/2} inside L(x)^{-1}'s conjugate cancels it, so neither
    exponential is ever evaluated.
    """
    alpha = np.asarray(alpha, dtype=float)
    nn = alpha.size
    herm = _hermite_values(x, n + nn - 1)
    q = np.zeros((nn, nn), dtype=complex)
    for j in range(1, nn + 1):
        for k in range(1, nn + 1):
            m = n + j - k
            if m >= 0:
                q[j - 1, k - 1] = xi[j - 1, k - 1] * herm[m]
    linv = unit_lower_inverse(hermite_lower_factor(alpha)(x))
    return q @ linv


@dataclass
class FastHermiteFamily:
    """Recursion-built family; mirrors the oracle family's access points."""

    alpha: np.ndarray
    n_max: int
    H: list
    B: list
    C: list
    xi: list

    @property
    def dim(self) -> int:
        return self.alpha.size

    def value(self, x, n: int) -> np.ndarray:
        if n < 0:
            return np.zeros((self.dim, self.dim), dtype=complex)
        return assemble_P(self.xi[n], self.alpha, float(x), n)


def fast_family(alpha, n_max: int, check_h0: bool = True) -> FastHermiteFamily:
    alpha = np.asarray(alpha, dtype=float)
    h = norm_recursion(h0_closed_form(alpha, check=check_h0), _shear(alpha), n_max)
    b, c = recurrence_from_norms(h, _shear(alpha))
    xis = [xi_table(alpha, h, n) for n in range(n_max + 1)]
    return FastHermiteFamily(alpha, n_max, h, b, c, xis)


def _shear(alpha) -> np.ndarray:
    return hermite_alpha_weight(alpha).A


def _j_matrix(dim: int) -> np.ndarray:
    return np.diag(np.arange(1, dim + 1)).astype(complex)


def _apply_big_d(p: MatrixPoly, a) -> MatrixPoly:
    """P . D = -P''/2 + P'(xI - A) + P J."""
    dp = p.deriv()
    return (-0.5) * dp.deriv() + dp.x_times() - dp.rmul(a) + p.rmul(_j_matrix(p.dim))


def second_order_D_check(fam, x: float, n: int) -> float:
    """Residual of P . D = (n I + J) P on an oracle family."""
    a = fam.weight.A
    lhs = _apply_big_d(fam.P[n], a)(x)
    rhs = (n * np.eye(fam.dim) + _j_matrix(fam.dim)) @ fam.value(x, n)
    return rel_residual(lhs - rhs, lhs, rhs)


def oscillator_bracket_checks(alpha, grid=(-1.5, -0.5, 0.5, 1.5)) -> dict:
    """Max residuals of [D, cal_D] = cal_D, [D, cal_D^dagger] = -cal_D^dagger
    and [cal_D, cal_D^dagger] = -2 I on sample polynomials (potential x^2).

    Products act on the right, P . (S T) = (P . S) . T, so the bracket
    applied to P reads [S, T](P) = t(s(P)) - s(t(P)).
    """
    from .ladder import cal_d, cal_d_dagger

    alpha = np.asarray(alpha, dtype=float)
    a = _shear(alpha)
    dim = alpha.size
    v = np.polynomial.Polynomial([0.0, 0.0, 1.0])

    def d(p):
        return cal_d(p, a)

    def ddag(p):
        return cal_d_dagger(p, a, v)

    def bigd(p):
        return _apply_big_d(p, a)

    rng = np.random.default_rng(11)
    samples = [MatrixPoly.monomial(2, dim),
               MatrixPoly(rng.standard_normal((4, dim, dim)))]
    cases = {
        "D_with_lowering": (lambda p: d(bigd(p)) - bigd(d(p)), d),
        "D_with_raising": (lambda p: ddag(bigd(p)) - bigd(ddag(p)),
                           lambda p: -1.0 * ddag(p)),
        "lowering_with_raising": (lambda p: ddag(d(p)) - d(ddag(p)),
                                  lambda p: -2.0 * p),
    }
    out = {}
    for name, (got_f, want_f) in cases.items():
        worst = 0.0
        for p in samples:
            got, want = got_f(p), want_f(p)
            for x in grid:
                worst = max(worst, rel_residual(got(x) - want(x), got(x), want(x)))
        out[name] = worst
    return out


def casimir_difference_operator(fam, n_max: int | None = None) -> DiffOp:
    """Three-term difference image of the Casimir for an alpha-family.

    -A d + (n I + J - 2 C(n) - A B(n) + A^2/2) + (C(n) A - 2 C(n) B(n-1)) d^{-1}
    """
    a = fam.weight.A
    dim = fam.dim
    jm = _j_matrix(dim)
    if n_max is None:
        n_max = len(fam.B) - 1
    up = np.broadcast_to(-a, (n_max + 1, dim, dim)).copy()
    mid = np.stack([n * np.eye(dim) + jm - 2.0 * fam.C[n] - a @ fam.B[n]
                    + 0.5 * a @ a for n in range(n_max + 1)])
    down = np.stack([fam.C[n] @ a - 2.0 * fam.C[n]
                     @ (fam.B[n - 1] if n >= 1 else np.zeros((dim, dim)))
                     for n in range(n_max + 1)])
    return DiffOp({1: up, 0: mid, -1: down}, n_max, dim)


def casimir_check(fam, x: float, n: int) -> float:
    """Residual of P . (J - xA + A^2/2) = (difference image) . P."""
    a = fam.weight.A
    p = fam.P[n]
    lhs = (p.rmul(_j_matrix(fam.dim)) - p.rmul(a).x_times()
           + 0.5 * p.rmul(a @ a))(x)
    rhs = casimir_difference_operator(fam).apply(fam, x, n)
    return rel_residual(lhs - rhs, lhs, rhs)


def casimir_gamma_commutator(fam) -> float:
    """Max coefficient norm of [difference Casimir, n I + J]."""
    dim = fam.dim
    n_max = len(fam.B) - 1
    gamma = DiffOp.from_sequence(0, [n * np.eye(dim) + _j_matrix(dim)
                                     for n in range(n_max + 1)])
    cas = casimir_difference_operator(fam)
    comm = cas.compose(gamma) - gamma.compose(cas)
    worst = 0.0
    for j, table in comm.coeff.items():
        worst = max(worst, float(np.max(np.abs(table))))
    return worst


def conjugation_checks(fam, x: float, n: int) -> dict:
    """Identities satisfied by Q(x, n) = P(x, n) Phi(x), Phi = e^{-x^2/2} L(x).

    Checks, in order: the conjugated lowering relation Q' + x Q = M . Q;
    the entrywise Schroedinger equation
    -Q''_{jk}/2 + x^2 Q_{jk}/2 = (n + j - k + 1/2) Q_{jk};
    the eigen-equation Q . D_Q = (n I + J) Q with
    D_Q = (-d^2/dx^2 + x^2 - 1)/2 + J;
    and the first-order ODE in x that drives the xi recursion.
    """
    meta = fam.weight.meta
    if meta.get("family") not in ("hermite_alpha", "pearson_hermite"):
        raise ValueError("conjugation checks need a Gaussian weight with "
                         "per-row scale parameters")
    alpha = np.asarray(meta["alpha"], dtype=float)
    a = fam.weight.A
    dim = fam.dim
    eye = np.eye(dim, dtype=complex)
    jm = _j_matrix(dim)

    lx = hermite_lower_factor(alpha)(x)
    phi = np.exp(-x * x / 2.0) * lx
    shear = a - x * eye
    p0 = fam.value(x, n)
    p1 = fam.P[n].deriv()(x)
    p2 = fam.P[n].deriv().deriv()(x)
    q = p0 @ phi
    dq = (p1 + p0 @ shear) @ phi
    d2q = (p2 + 2.0 * p1 @ shear + p0 @ (shear @ shear - eye)) @ phi

    out = {}

    low = DiffOp.constant(a, fam.n_max - 1) \
        + DiffOp.from_sequence(-1, [2.0 * c for c in fam.C[: fam.n_max]])
    rhs = np.zeros((dim, dim), dtype=complex)
    for j in (0, -1):
        if n + j >= 0:
            rhs += low.coefficient(j, n) @ (fam.value(x, n + j) @ phi)
    lhs = dq + x * q
    out["lowering_on_Q"] = rel_residual(lhs - rhs, lhs, rhs)

    worst = 0.0
    for j in range(1, dim + 1):
        for k in range(1, dim + 1):
            lhs_e = -0.5 * d2q[j - 1, k - 1] + 0.5 * x * x * q[j - 1, k - 1]
            rhs_e = (n + j - k + 0.5) * q[j - 1, k - 1]
            worst = max(worst, abs(lhs_e - rhs_e) / max(1.0, abs(lhs_e), abs(rhs_e)))
    out["schrodinger_entrywise"] = worst

    lhs = -0.5 * d2q + 0.5 * x * x * q - 0.5 * q + q @ jm
    rhs = (n * eye + jm) @ q
    out["eigen_equation_on_Q"] = rel_residual(lhs - rhs, lhs, rhs)

    g = fam.H[n] @ a.conj().T @ fam.h_inv(n)
    rhs = (n * eye + jm - 0.5 * x * a - 0.5 * g @ (x * eye - a)
           - 2.0 * fam.C[n]) @ q + 0.5 * (a - g) @ dq
    lhs = q @ jm
    out["first_order_ode"] = rel_residual(lhs - rhs, lhs, rhs)
    return out
