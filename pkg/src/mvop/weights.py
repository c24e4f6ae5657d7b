"""Exponential-type matrix weights e^{-v(x)} L e^{xA} e^{xA*} L*.

The scalar potential v has even degree and positive leading
coefficient so the weight decays at both infinities; A is a constant
square matrix and L an optional constant left factor (unit lower
triangular in the concrete families below).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.hermite import herm2poly

from .linalg import as_matrix, cholesky, mat_exp, nilpotency_index
from .poly import MatrixPoly

__all__ = [
    "ExponentialWeight",
    "scalar_weight",
    "hermite_alpha_weight",
    "hermite_lower_factor",
    "pearson_alpha_parameters",
    "pearson_hermite_weight",
    "freud_weight",
    "normalize_weight",
    "weight_log_derivative",
    "pearson_V_hermite",
    "pearson_V_numeric",
]


def _as_potential(v) -> Polynomial:
    p = v if isinstance(v, Polynomial) else Polynomial(np.asarray(v, dtype=float))
    coef = p.coef
    deg = len(coef) - 1
    while deg > 0 and coef[deg] == 0:
        deg -= 1
    if deg == 0 or deg % 2 != 0 or coef[deg] <= 0:
        raise ValueError("potential must have even degree and a positive "
                         "leading coefficient")
    return p


@dataclass
class ExponentialWeight:
    """Weight W(x) = e^{-v(x)} L e^{xA} e^{xA*} L*."""

    v: Polynomial
    A: np.ndarray
    left: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.v = _as_potential(self.v)
        self.A = as_matrix(self.A)
        if self.left is not None:
            self.left = as_matrix(self.left)
            if self.left.shape != self.A.shape:
                raise ValueError("left factor and A must have equal shape")

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def with_potential(self, v) -> "ExponentialWeight":
        return ExponentialWeight(v, self.A, self.left, dict(self.meta))

    def pearson_degree(self) -> int:
        """Degree bound for the polynomial V with W' = -W V.

        The conjugated series e^{xA} A* e^{-xA} terminates at degree
        2 (nu - 1) when A is nilpotent of index nu, so V has degree at
        most max(deg v - 1, 2 nu - 2).
        """
        deg = max(1, self.v.degree() - 1)
        if not np.any(self.A):
            return deg
        idx = nilpotency_index(self.A)
        if idx is None:
            raise ValueError("A is not nilpotent, the derivative "
                             "coefficient is not polynomial")
        return max(deg, 2 * idx - 2)

    def _exp_xa(self, xs: np.ndarray) -> np.ndarray:
        """e^{x A} for a 1-d array of points, shape (K, N, N)."""
        n = self.dim
        idx = nilpotency_index(self.A)
        if idx is not None:
            out = np.broadcast_to(np.eye(n, dtype=complex), (xs.size, n, n)).copy()
            term = np.eye(n, dtype=complex)
            for k in range(1, idx):
                term = term @ self.A / k
                out += xs[:, None, None] ** k * term
            return out
        return np.stack([mat_exp(self.A, x) for x in xs])

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xs = x.reshape(-1)
        u = self._exp_xa(xs)
        if self.left is not None:
            u = self.left[None] @ u
        w = u @ np.conj(np.swapaxes(u, 1, 2))
        w *= np.exp(-self.v(xs))[:, None, None]
        return w[0] if scalar else w.reshape(x.shape + w.shape[1:])

    def log_derivative(self, x: float) -> np.ndarray:
        """W'(x) W(x)^{-1}, evaluated analytically."""
        n = self.dim
        l0 = self.left if self.left is not None else np.eye(n, dtype=complex)
        ea = mat_exp(self.A, x)
        u = l0 @ ea
        uinv = np.linalg.inv(u)
        eas = mat_exp(self.A.conj().T, x)
        mid = u @ eas @ self.A.conj().T @ np.linalg.inv(eas) @ uinv
        return (-self.v.deriv()(x) * np.eye(n, dtype=complex)
                + l0 @ self.A @ np.linalg.inv(l0) + mid)


def scalar_weight(v) -> ExponentialWeight:
    """Scalar weight e^{-v(x)} as a 1x1 matrix weight."""
    return ExponentialWeight(v, np.zeros((1, 1)), meta={"family": "scalar"})


def _hermite_number(m: int) -> float:
    # value at zero of the m-th physicists' Hermite polynomial
    if m % 2:
        return 0.0
    r = m // 2
    return (-1.0) ** r * factorial(m) / factorial(r)


def hermite_lower_factor(alpha) -> MatrixPoly:
    """Unit lower-triangular L(x) with entries H_{j-k}(x)/(j-k)! a_j/a_k."""
    alpha = np.asarray(alpha, dtype=float)
    n = alpha.size
    coeffs = np.zeros((n, n, n), dtype=complex)
    for j in range(n):
        for k in range(j + 1):
            m = j - k
            basis = np.zeros(m + 1)
            basis[m] = 1.0
            mono = herm2poly(basis) / factorial(m) * (alpha[j] / alpha[k])
            coeffs[: m + 1, j, k] += mono
    return MatrixPoly(coeffs).trim()


def hermite_alpha_weight(alpha) -> ExponentialWeight:
    """Gaussian weight e^{-x^2} L(x) L(x)* built from positive numbers a_j.

    L(x) factors as L(0) e^{xA} with A_{j,j-1} = 2 a_j / a_{j-1} on the
    first subdiagonal, so the weight is of exponential type with
    potential x^2.
    """
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0):
        raise ValueError("alpha entries must be positive")
    n = alpha.size
    a = np.zeros((n, n), dtype=complex)
    for j in range(1, n):
        a[j, j - 1] = 2.0 * alpha[j] / alpha[j - 1]
    l0 = hermite_lower_factor(alpha)(0.0)
    return ExponentialWeight(Polynomial([0.0, 0.0, 1.0]), a, l0,
                             meta={"family": "hermite_alpha",
                                   "alpha": alpha.tolist()})


def pearson_alpha_parameters(n: int) -> np.ndarray:
    """The alpha ladder a_j/a_{j-1} = sqrt((j-1)(N-j+1))/2, a_1 = 1.

    With these values the weight satisfies a Pearson equation with a
    polynomial coefficient of degree two.
    """
    alpha = np.ones(n)
    for j in range(2, n + 1):
        alpha[j - 1] = alpha[j - 2] * np.sqrt((j - 1) * (n - j + 1)) / 2.0
    return alpha


def pearson_hermite_weight(n: int) -> ExponentialWeight:
    w = hermite_alpha_weight(pearson_alpha_parameters(n))
    w.meta["family"] = "pearson_hermite"
    return w


def freud_weight(n: int, alpha: float, beta: float, t: float = 0.0) -> ExponentialWeight:
    """Quartic matrix weight e^{-x^4 + t x^2} e^{xA} e^{xA*}.

    The subdiagonal of A is sqrt(mu_i) with
    6 mu_i = (i-1)(N-i+1)(2 N alpha + 2 alpha i + 3 beta + alpha).
    The t term enters the potential as v = x^4 - t x^2; pass -t for
    the opposite exponent convention.
    """
    a = np.zeros((n, n), dtype=complex)
    for i in range(2, n + 1):
        mu = (i - 1) * (n - i + 1) * (2 * n * alpha + 2 * alpha * i + 3 * beta + alpha) / 6.0
        if mu < 0:
            raise ValueError(f"mu_{i} = {mu} is negative")
        a[i - 1, i - 2] = np.sqrt(mu)
    return ExponentialWeight(Polynomial([0.0, 0.0, -t, 0.0, 1.0]), a,
                             meta={"family": "freud", "alpha": alpha,
                                   "beta": beta, "t": t})


def normalize_weight(v, a, t, l) -> tuple[ExponentialWeight, np.ndarray]:
    """Reduce e^{-v} L e^{xA} T e^{xA*} L* to the T = I, L = I form.

    Returns the reduced weight with matrix K^{-1} A K (K the Cholesky
    factor of T) and the constant conjugation factor L K that carries
    its polynomials back to the original ones.
    """
    a = as_matrix(a)
    k = cholesky(t)
    factor = as_matrix(l) @ k
    a_red = np.linalg.inv(k) @ a @ k
    return ExponentialWeight(v, a_red, meta={"family": "reduced"}), factor


def weight_log_derivative(w: ExponentialWeight, x: float) -> np.ndarray:
    return w.log_derivative(x)


def pearson_V_hermite(alpha) -> MatrixPoly:
    """Degree-two Pearson coefficient V with W' = -W V for the ladder alphas."""
    alpha = np.asarray(alpha, dtype=float)
    n = alpha.size
    w = hermite_alpha_weight(alpha)
    a = w.A
    astar = a.conj().T
    l0s = w.left.conj().T
    j = np.diag(np.arange(1, n + 1)).astype(complex)
    eye = np.eye(n, dtype=complex)
    c0 = -(np.linalg.inv(l0s) @ a @ l0s) - astar
    c1 = -2.0 * (j + 0.5 * astar @ astar - 0.5 * (n + 3) * eye)
    c2 = astar
    return MatrixPoly(np.stack([c0, c1, c2]))


def pearson_V_numeric(w: ExponentialWeight, degree: int | None = None) -> MatrixPoly:
    """Fit the Pearson coefficient V(x) = -W(x)^{-1} W'(x) as a polynomial.

    Samples at degree+1 Chebyshev points of a window chosen inside the
    region where the weight is well conditioned, then verifies the fit
    on fresh nodes.  Raises ValueError if V is not a polynomial of the
    requested degree, which defaults to the weight's Pearson degree.
    """
    if degree is None:
        degree = w.pearson_degree()
    r = 2.0
    while w.v(r) > 50.0 and r > 0.5:
        r *= 0.9
    k = degree + 1
    nodes = r * np.cos(np.pi * (2 * np.arange(1, k + 1) - 1) / (2 * k))

    def sample(x):
        wx = w(float(x))
        return -np.linalg.inv(wx) @ (w.log_derivative(float(x)) @ wx)

    vand = np.vander(nodes, k, increasing=True)
    rhs = np.stack([sample(x) for x in nodes]).reshape(k, -1)
    sol = np.linalg.solve(vand, rhs).reshape(k, w.dim, w.dim)
    fit = MatrixPoly(sol)
    probe = r * np.cos(np.pi * (2 * np.arange(1, 2 * k + 1) - 1) / (4 * k))
    err = max(np.max(np.abs(fit(float(x)) - sample(x))) for x in probe)
    scale = max(1.0, max(np.max(np.abs(sample(float(x)))) for x in probe))
    if err / scale > 1e-8:
        raise ValueError(f"log derivative is not polynomial of degree {degree}: "
                         f"fit error {err / scale:.2e}")
    return fit
