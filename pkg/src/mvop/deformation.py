"""Deformations of the recurrence coefficients in weight parameters.

For weights e^{-v(x, t)} W_0(x) with dv/dt = u(x) polynomial, the
recurrence coefficients flow as

  dB(n)/dt = (u(L))_{-1}(n) - (u(L))_{-1}(n+1)
  dC(n)/dt = (u(L))_{-2}(n) - (u(L))_{-2}(n+1)
             + (u(L))_{-1}(n) B(n-1) - B(n) (u(L))_{-1}(n)

(Toda for u = x, the next lattice for u = x^2, and so on).  The same
flows arise as Lax brackets dL/dt = [L, (L^j)_+] of the block
tridiagonal Jacobi matrix; both routes are implemented and compared on
interior blocks, where dense truncation has not yet propagated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import rel_residual
from .ops import DiffOp, op_poly
from .oracle import gram_schmidt_family

__all__ = [
    "sequence_jacobi_operator",
    "lattice_rhs",
    "lattice_rhs_family",
    "finite_diff_check",
    "BlockTridiag",
    "block_upper",
    "block_strict_lower",
    "lax_bracket",
    "lax_minus_consistency",
    "lax_vs_lattice",
    "rk4_evolve",
    "mixed_flow_residual",
]


def sequence_jacobi_operator(b_list, c_list) -> DiffOp:
    """L = d + B(n) + C(n) d^{-1} from raw coefficient sequences."""
    n_max = min(len(b_list), len(c_list)) - 1
    dim = np.asarray(b_list[0]).shape[0]
    eye = np.broadcast_to(np.eye(dim, dtype=complex), (n_max + 1, dim, dim)).copy()
    b = np.stack([np.asarray(m, dtype=complex) for m in b_list[: n_max + 1]])
    c = np.stack([np.asarray(m, dtype=complex) for m in c_list[: n_max + 1]])
    return DiffOp({1: eye, 0: b, -1: c}, n_max, dim)


def lattice_rhs(b_list, c_list, u_coeffs) -> tuple[list, list]:
    """Right-hand sides (dB(n)/dt, dC(n)/dt) for the flow dv/dt = u.

    Returns lists over the n-range where the stencil is complete; the
    B list and C list have equal length, with dC(0)/dt = 0.
    """
    l_op = sequence_jacobi_operator(b_list, c_list)
    g = op_poly(l_op, np.asarray(getattr(u_coeffs, "coef", u_coeffs)))
    dim = l_op.dim
    n_top = g.n_max - 1
    bdot, cdot = [], []
    for n in range(n_top + 1):
        g1n = g.coefficient(-1, n)
        bdot.append(g1n - g.coefficient(-1, n + 1))
        if n == 0:
            cdot.append(np.zeros((dim, dim), dtype=complex))
        else:
            cdot.append(g.coefficient(-2, n) - g.coefficient(-2, n + 1)
                        + g1n @ np.asarray(b_list[n - 1], dtype=complex)
                        - np.asarray(b_list[n], dtype=complex) @ g1n)
    return bdot, cdot


def lattice_rhs_family(fam, u_coeffs) -> tuple[list, list]:
    return lattice_rhs(fam.B, fam.C, u_coeffs)


def finite_diff_check(make_weight, u_coeffs, t: float, h: float = 1e-4,
                      n_max: int = 8, n_check: int | None = None) -> dict:
    """Central-difference derivative of the oracle coefficients vs the flow.

    ``make_weight(t)`` builds the weight of the one-parameter family;
    ``u_coeffs`` is dv/dt.  Returns max residuals over n <= n_check.
    """
    fam0 = gram_schmidt_family(make_weight(t), n_max)
    famp = gram_schmidt_family(make_weight(t + h), n_max)
    famm = gram_schmidt_family(make_weight(t - h), n_max)
    bdot, cdot = lattice_rhs_family(fam0, u_coeffs)
    if n_check is None:
        n_check = len(bdot) - 1
    worst_b = worst_c = 0.0
    for n in range(n_check + 1):
        fd_b = (famp.B[n] - famm.B[n]) / (2.0 * h)
        fd_c = (famp.C[n] - famm.C[n]) / (2.0 * h)
        worst_b = max(worst_b, rel_residual(fd_b - bdot[n], fd_b, bdot[n]))
        worst_c = max(worst_c, rel_residual(fd_c - cdot[n], fd_c, cdot[n]))
    return {"B": worst_b, "C": worst_c, "n_check": n_check, "h": h}


# -- Lax form -------------------------------------------------------------

@dataclass
class BlockTridiag:
    """Dense truncation of the block Jacobi matrix of a family."""

    b_blocks: list
    c_blocks: list
    dim: int

    @classmethod
    def from_family(cls, fam, n_blocks: int) -> "BlockTridiag":
        if n_blocks > len(fam.B):
            raise ValueError(f"family tabulates B only up to n = {len(fam.B) - 1}")
        return cls([np.asarray(fam.B[n]) for n in range(n_blocks)],
                   [np.asarray(fam.C[n]) for n in range(n_blocks)], fam.dim)

    @property
    def n_blocks(self) -> int:
        return len(self.b_blocks)

    def dense(self) -> np.ndarray:
        nb, d = self.n_blocks, self.dim
        out = np.zeros((nb * d, nb * d), dtype=complex)
        eye = np.eye(d)
        for n in range(nb):
            out[n * d:(n + 1) * d, n * d:(n + 1) * d] = self.b_blocks[n]
            if n + 1 < nb:
                out[n * d:(n + 1) * d, (n + 1) * d:(n + 2) * d] = eye
                out[(n + 1) * d:(n + 2) * d, n * d:(n + 1) * d] = self.c_blocks[n + 1]
        return out


def _block_mask(total: int, dim: int, keep_upper: bool) -> np.ndarray:
    nb = total // dim
    mask = np.zeros((total, total), dtype=bool)
    for i in range(nb):
        for j in range(nb):
            if (j >= i) == keep_upper:
                mask[i * dim:(i + 1) * dim, j * dim:(j + 1) * dim] = True
    return mask


def block_upper(m: np.ndarray, dim: int) -> np.ndarray:
    """Block-diagonal and above (the + projection; diagonal goes here)."""
    return np.where(_block_mask(m.shape[0], dim, True), m, 0.0)


def block_strict_lower(m: np.ndarray, dim: int) -> np.ndarray:
    return np.where(_block_mask(m.shape[0], dim, False), m, 0.0)


def lax_bracket(tri: BlockTridiag, j: int) -> np.ndarray:
    """[L, (L^j)_+] on the dense truncation."""
    l_mat = tri.dense()
    lj = np.linalg.matrix_power(l_mat, j)
    plus = block_upper(lj, tri.dim)
    return l_mat @ plus - plus @ l_mat


def lax_minus_consistency(tri: BlockTridiag, j: int, n_interior: int) -> float:
    """Max deviation of [L, (L^j)_+] = -[L, (L^j)_-] on interior blocks."""
    l_mat = tri.dense()
    lj = np.linalg.matrix_power(l_mat, j)
    plus = block_upper(lj, tri.dim)
    minus = block_strict_lower(lj, tri.dim)
    lhs = l_mat @ plus - plus @ l_mat
    rhs = -(l_mat @ minus - minus @ l_mat)
    d = tri.dim
    top = (n_interior + 1) * d
    return float(np.max(np.abs(lhs[:top, :top] - rhs[:top, :top])))


def lax_vs_lattice(fam, j: int, n_interior: int) -> float:
    """Compare Lax-bracket blocks with the lattice right-hand sides.

    The truncation is padded by j + 3 blocks so rows up to n_interior
    are unaffected by the cut; the (n, n) blocks must match dB(n)/dt
    and the (n, n-1) blocks dC(n)/dt.
    """
    n_blocks = n_interior + j + 3
    tri = BlockTridiag.from_family(fam, n_blocks)
    br = lax_bracket(tri, j)
    u = np.zeros(j + 1)
    u[j] = 1.0
    bdot, cdot = lattice_rhs_family(fam, u)
    d = fam.dim
    worst = 0.0
    for n in range(n_interior + 1):
        bb = br[n * d:(n + 1) * d, n * d:(n + 1) * d]
        worst = max(worst, rel_residual(bb - bdot[n], bb, bdot[n]))
        if n >= 1:
            cb = br[n * d:(n + 1) * d, (n - 1) * d:n * d]
            worst = max(worst, rel_residual(cb - cdot[n], cb, cdot[n]))
    return worst


# -- demonstration time stepper ------------------------------------------

def rk4_evolve(b_list, c_list, u_coeffs, t_final: float, dt: float = 1e-3):
    """Evolve (B, C) under the lattice flow with fixed-step RK4.

    Demonstration quality only: the top of the tabulated range cannot
    see its stencil and is frozen, so run well below n_max and for
    short times.  Returns (times, B_series, C_series) where the series
    are lists over time of lists over n.
    """
    b = [np.asarray(m, dtype=complex).copy() for m in b_list]
    c = [np.asarray(m, dtype=complex).copy() for m in c_list]
    n_valid = len(lattice_rhs(b, c, u_coeffs)[0])

    def rhs(state):
        sb, sc = state
        db, dc = lattice_rhs(sb, sc, u_coeffs)
        db += [np.zeros_like(sb[0])] * (len(sb) - len(db))
        dc += [np.zeros_like(sc[0])] * (len(sc) - len(dc))
        return db, dc

    def axpy(state, k, w):
        return ([sb + w * kb for sb, kb in zip(state[0], k[0])],
                [sc + w * kc for sc, kc in zip(state[1], k[1])])

    times = [0.0]
    bs, cs = [[m.copy() for m in b[:n_valid]]], [[m.copy() for m in c[:n_valid]]]
    state = (b, c)
    t = 0.0
    steps = int(round(t_final / dt))
    for _ in range(steps):
        k1 = rhs(state)
        k2 = rhs(axpy(state, k1, dt / 2))
        k3 = rhs(axpy(state, k2, dt / 2))
        k4 = rhs(axpy(state, k3, dt))
        state = ([sb + dt / 6 * (a + 2 * b2 + 2 * c2 + d2) for sb, a, b2, c2, d2
                  in zip(state[0], k1[0], k2[0], k3[0], k4[0])],
                 [sc + dt / 6 * (a + 2 * b2 + 2 * c2 + d2) for sc, a, b2, c2, d2
                  in zip(state[1], k1[1], k2[1], k3[1], k4[1])])
        t += dt
        times.append(t)
        bs.append([m.copy() for m in state[0][:n_valid]])
        cs.append([m.copy() for m in state[1][:n_valid]])
    return times, bs, cs


def mixed_flow_residual(make_weight2, u1_coeffs, u2_coeffs, t1: float, t2: float,
                        h: float = 1e-3, n_max: int = 8,
                        n_check: int | None = None) -> float:
    """Commutativity of two flows on B(n), via mixed partial derivatives.

    d/dt1 of the u2-flow RHS must equal d/dt2 of the u1-flow RHS;
    each outer derivative is a central difference of oracle families
    built by ``make_weight2(t1, t2)``.
    """
    def rhs_at(tt1, tt2, u):
        fam = gram_schmidt_family(make_weight2(tt1, tt2), n_max)
        return lattice_rhs_family(fam, u)[0]

    d1_of_2 = [(p - m) / (2 * h) for p, m in
               zip(rhs_at(t1 + h, t2, u2_coeffs), rhs_at(t1 - h, t2, u2_coeffs))]
    d2_of_1 = [(p - m) / (2 * h) for p, m in
               zip(rhs_at(t1, t2 + h, u1_coeffs), rhs_at(t1, t2 - h, u1_coeffs))]
    if n_check is None:
        n_check = min(len(d1_of_2), len(d2_of_1)) - 1
    worst = 0.0
    for n in range(n_check + 1):
        worst = max(worst, rel_residual(d1_of_2[n] - d2_of_1[n],
                                        d1_of_2[n], d2_of_1[n]))
    return worst
