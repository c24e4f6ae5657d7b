"""Quadrature Gram-Schmidt construction of monic matrix orthogonal families.

This is the ground-truth path: no recurrence shortcuts, just the
defining projections under the matrix inner product
<F, G> = integral F(y) W(y) G(y)* dy.  Everything faster in the
package is validated against families built here.

Double precision limits the trusted range to roughly n_max = 12 for
N <= 3; beyond that the monomial projections lose positive
definiteness in H(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import frob, rel_residual
from .poly import MatrixPoly
from .quadrature import QuadratureRule, build_quadrature
from .serialize import c_encode
from .weights import ExponentialWeight

__all__ = [
    "ConditioningError",
    "MVOPFamily",
    "inner_product",
    "gram_schmidt_family",
    "christoffel_darboux_residual",
    "TRUSTED_N_MAX",
]

# documented conditioning budget of the monomial Gram-Schmidt oracle
TRUSTED_N_MAX = 12

DEFAULT_GRID = np.array([-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0])


class ConditioningError(RuntimeError):
    """Positive definiteness lost during orthogonalization."""


def _values_at(f, nodes: np.ndarray, dim: int) -> np.ndarray:
    if isinstance(f, MatrixPoly):
        return f(nodes)
    if isinstance(f, np.ndarray) and f.ndim == 3:
        return f
    vals = np.stack([np.asarray(f(x), dtype=complex) for x in nodes])
    if vals.shape[1:] != (dim, dim):
        raise ValueError("integrand does not produce square matrices")
    return vals


def inner_product(f, g, w: ExponentialWeight, rule: QuadratureRule,
                  w_vals: np.ndarray | None = None) -> np.ndarray:
    """<F, G> = integral F(y) W(y) G(y)* dy by quadrature."""
    if w_vals is None:
        w_vals = w(rule.nodes)
    fv = _values_at(f, rule.nodes, w.dim)
    gv = _values_at(g, rule.nodes, w.dim)
    integrand = fv @ w_vals @ np.conj(np.swapaxes(gv, 1, 2))
    return np.einsum("k,kab->ab", rule.weights, integrand)


@dataclass
class MVOPFamily:
    """Monic family P(x, n), its norms and recurrence coefficients.

    B(n) is tabulated for n < n_max (it needs the subleading
    coefficient of P(x, n+1)); C(0) is the zero matrix by the boundary
    convention.
    """

    weight: ExponentialWeight
    n_max: int
    P: list
    H: list
    X: list
    B: list
    C: list
    rule: QuadratureRule
    diagnostics: dict = field(default_factory=dict)
    _w_vals: np.ndarray | None = None
    _p_vals: list = field(default_factory=list)
    _h_inv: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.weight.dim

    def value(self, x, n: int) -> np.ndarray:
        """P(x, n); the zero matrix for n < 0."""
        if n < 0:
            x = np.asarray(x)
            return np.zeros(x.shape + (self.dim, self.dim), dtype=complex)
        if n > self.n_max:
            raise ValueError(f"P(x, {n}) not tabulated (n_max = {self.n_max})")
        return self.P[n](x)

    def h_inv(self, n: int) -> np.ndarray:
        if not self._h_inv:
            self._h_inv = [np.linalg.inv(h) for h in self.H]
        return self._h_inv[n]

    def inner(self, f, g) -> np.ndarray:
        return inner_product(f, g, self.weight, self.rule, self._w_vals)

    def to_jsonable(self) -> dict:
        return {
            "N": self.dim,
            "n_max": self.n_max,
            "weight": {
                "v": list(self.weight.v.coef),
                "A": c_encode(self.weight.A),
                "left": None if self.weight.left is None else c_encode(self.weight.left),
                **{k: v for k, v in self.weight.meta.items()},
            },
            "P": [c_encode(p.coeffs) for p in self.P],
            "H": [c_encode(h) for h in self.H],
            "B": [c_encode(b) for b in self.B],
            "C": [c_encode(c) for c in self.C],
            "diagnostics": self.diagnostics,
        }


def gram_schmidt_family(w: ExponentialWeight, n_max: int,
                        rule: QuadratureRule | None = None) -> MVOPFamily:
    """Orthogonalize the monic monomial basis against the weight.

    Classical Gram-Schmidt with one full reorthogonalization pass per
    degree; coefficients and node values are carried together so the
    returned family evaluates exactly (polynomials) and integrates
    cheaply (cached node data).
    """
    if rule is None:
        rule = build_quadrature(w, n_max)
    dim = w.dim
    nodes = rule.nodes
    w_vals = w(nodes)
    eye = np.eye(dim, dtype=complex)

    p_polys: list[MatrixPoly] = []
    p_vals: list[np.ndarray] = []
    h_list: list[np.ndarray] = []
    h_inv: list[np.ndarray] = []
    ortho_rel = 0.0

    def pair(fv, gv):
        return np.einsum("k,kab,kbc->ac", rule.weights, fv @ w_vals,
                         np.conj(np.swapaxes(gv, 1, 2)))

    for n in range(n_max + 1):
        poly = MatrixPoly.monomial(n, dim)
        vals = (nodes[:, None, None] ** n) * eye
        for _ in range(2):  # second pass scrubs rounding in the projections
            for m in range(n):
                g = pair(vals, p_vals[m]) @ h_inv[m]
                vals = vals - g @ p_vals[m]
                poly = poly - p_polys[m].lmul(g)
        h = pair(vals, vals)
        h = 0.5 * (h + h.conj().T)
        try:
            np.linalg.cholesky(h)
        except np.linalg.LinAlgError as exc:
            raise ConditioningError(
                f"H({n}) is not positive definite; degree {n} exceeds the "
                f"conditioning budget of the quadrature oracle") from exc
        for m in range(n):
            ortho_rel = max(ortho_rel, frob(pair(vals, p_vals[m])) / frob(h))
        p_polys.append(poly)
        p_vals.append(vals)
        h_list.append(h)
        h_inv.append(np.linalg.inv(h))

    x_list = [p_polys[n].coefficient(n - 1) if n > 0 else np.zeros((dim, dim), dtype=complex)
              for n in range(n_max + 1)]
    b_list = [x_list[n] - x_list[n + 1] for n in range(n_max)]
    c_list = [np.zeros((dim, dim), dtype=complex)]
    c_list += [h_list[n] @ h_inv[n - 1] for n in range(1, n_max + 1)]

    fam = MVOPFamily(w, n_max, p_polys, h_list, x_list, b_list, c_list, rule,
                     _w_vals=w_vals, _p_vals=p_vals, _h_inv=h_inv)
    fam.diagnostics["orthogonality"] = ortho_rel
    fam.diagnostics["three_term"] = three_term_residual(fam)
    return fam


def three_term_residual(fam: MVOPFamily, grid=DEFAULT_GRID) -> float:
    """Max residual of x P_n = P_{n+1} + B(n) P_n + C(n) P_{n-1} on a grid."""
    worst = 0.0
    for n in range(fam.n_max):
        for x in grid:
            lhs = x * fam.value(x, n)
            rhs = fam.value(x, n + 1) + fam.B[n] @ fam.value(x, n) \
                + fam.C[n] @ fam.value(x, n - 1)
            worst = max(worst, rel_residual(lhs - rhs, lhs, rhs))
    return worst


def christoffel_darboux_residual(fam: MVOPFamily, x: float, y: float, n: int) -> float:
    """Residual of the Christoffel-Darboux identity at (x, y), order n."""
    dim = fam.dim
    kernel = np.zeros((dim, dim), dtype=complex)
    for k in range(n):
        kernel += np.conj(fam.value(y, k).T) @ fam.h_inv(k) @ fam.value(x, k)
    lhs = (x - y) * kernel
    hin = fam.h_inv(n - 1)
    rhs = np.conj(fam.value(y, n - 1).T) @ hin @ fam.value(x, n) \
        - np.conj(fam.value(y, n).T) @ hin @ fam.value(x, n - 1)
    return rel_residual(lhs - rhs, lhs, rhs)
