"""Difference operators in the shift variable n, acting on the degree index.

An operator M = sum_j A_j(n) d^j acts on a family by
(M . P)(x, n) = sum_j A_j(n) P(x, n+j), with P(x, m) = 0 for m < 0.
Coefficients are tabulated on 0..n_max; composition, star and the
H-adjoint shrink the tabulated range rather than zero-padding at the
top, because padded coefficients would silently corrupt identities.
Negative sequence indices are the zero matrix by convention.
"""

from __future__ import annotations

import numpy as np

from .linalg import as_matrix

__all__ = ["DiffOp", "recurrence_operator", "op_poly"]


class DiffOp:
    """Banded difference operator with tabulated matrix coefficients."""

    def __init__(self, coeff: dict, n_max: int, dim: int):
        if n_max < 0:
            raise ValueError("operator has an empty tabulation range "
                             "(band grew past the available coefficients)")
        self.n_max = n_max
        self.dim = dim
        self.coeff = {}
        for j, table in coeff.items():
            table = np.asarray(table, dtype=complex)
            if table.shape != (n_max + 1, dim, dim):
                raise ValueError(f"coefficient table at shift {j} has shape "
                                 f"{table.shape}")
            if np.any(table != 0):
                self.coeff[int(j)] = table

    # -- constructors ---------------------------------------------------
    @classmethod
    def identity(cls, dim: int, n_max: int) -> "DiffOp":
        return cls.constant(np.eye(dim), n_max)

    @classmethod
    def constant(cls, m, n_max: int, shift: int = 0) -> "DiffOp":
        m = as_matrix(m)
        table = np.broadcast_to(m, (n_max + 1,) + m.shape).copy()
        return cls({shift: table}, n_max, m.shape[0])

    @classmethod
    def from_sequence(cls, shift: int, seq) -> "DiffOp":
        """Single-term operator A(n) d^shift from a list of matrices."""
        table = np.stack([as_matrix(m) for m in seq])
        return cls({shift: table}, table.shape[0] - 1, table.shape[1])

    # -- accessors --------------------------------------------------------
    @property
    def band(self) -> tuple[int, int]:
        if not self.coeff:
            return (0, 0)
        keys = sorted(self.coeff)
        return (keys[0], keys[-1])

    def coefficient(self, j: int, n: int) -> np.ndarray:
        """A_j(n); zero matrix for absent shifts or negative n."""
        zero = np.zeros((self.dim, self.dim), dtype=complex)
        if j not in self.coeff or n < 0:
            return zero
        if n > self.n_max:
            raise ValueError(f"coefficient requested at n = {n} beyond "
                             f"tabulated n_max = {self.n_max}")
        return self.coeff[j][n]

    # -- linear structure -------------------------------------------------
    def _binary(self, other: "DiffOp", sign: float) -> "DiffOp":
        if self.dim != other.dim:
            raise ValueError("operator dimensions differ")
        n_max = min(self.n_max, other.n_max)
        out: dict = {}
        for j in set(self.coeff) | set(other.coeff):
            a = self.coeff.get(j)
            b = other.coeff.get(j)
            table = np.zeros((n_max + 1, self.dim, self.dim), dtype=complex)
            if a is not None:
                table += a[: n_max + 1]
            if b is not None:
                table += sign * b[: n_max + 1]
            out[j] = table
        return DiffOp(out, n_max, self.dim)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return self._binary(other, 1.0)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self._binary(other, -1.0)

    def __mul__(self, scalar) -> "DiffOp":
        return DiffOp({j: scalar * t for j, t in self.coeff.items()},
                      self.n_max, self.dim)

    __rmul__ = __mul__

    def __neg__(self) -> "DiffOp":
        return self * (-1.0)

    # -- algebra ---------------------------------------------------------
    def compose(self, other: "DiffOp") -> "DiffOp":
        """(S o T)_j(n) = sum_{a+b=j} S_a(n) T_b(n+a).

        T coefficients at negative index are zero; positive shifts of S
        push reads past T's tabulation, so the result range shrinks by
        max(0, jmax(S)).
        """
        if self.dim != other.dim:
            raise ValueError("operator dimensions differ")
        jmax = max(self.band[1], 0)
        n_max = min(self.n_max, other.n_max - jmax)
        if n_max < 0:
            raise ValueError("composition exhausts the tabulated range")
        ns = np.arange(n_max + 1)
        out: dict = {}
        for a, sa in self.coeff.items():
            for b, tb in other.coeff.items():
                idx = ns + a
                valid = idx >= 0
                block = np.zeros((n_max + 1, self.dim, self.dim), dtype=complex)
                block[valid] = sa[: n_max + 1][valid] @ tb[idx[valid]]
                key = a + b
                if key in out:
                    out[key] += block
                else:
                    out[key] = block
        return DiffOp(out, n_max, self.dim)

    def star(self) -> "DiffOp":
        """Formal star: A_j(n) d^j -> A_j(n-j)* d^{-j}."""
        jmin = min(self.band[0], 0)
        n_max = self.n_max + jmin
        if n_max < 0:
            raise ValueError("star exhausts the tabulated range")
        ns = np.arange(n_max + 1)
        out: dict = {}
        for j, table in self.coeff.items():
            idx = ns - j
            block = np.zeros((n_max + 1, self.dim, self.dim), dtype=complex)
            valid = (idx >= 0) & (idx <= self.n_max)
            block[valid] = np.conj(np.swapaxes(table[idx[valid]], 1, 2))
            out[-j] = block
        return DiffOp(out, n_max, self.dim)

    def dagger(self, h: list) -> "DiffOp":
        """Adjoint with respect to the norms: M^dagger = H(n) M* H(n)^{-1}.

        The shift-i coefficient is H(n) (M*)_i(n) H(n+i)^{-1}; ``h`` is
        the tabulated norm sequence.
        """
        st = self.star()
        h_arr = [as_matrix(m) for m in h]
        h_inv = [np.linalg.inv(m) for m in h_arr]
        imax = max(st.band[1], 0)
        n_max = min(st.n_max, len(h_arr) - 1 - imax)
        if n_max < 0:
            raise ValueError("norm sequence too short for the adjoint band")
        out: dict = {}
        for i, table in st.coeff.items():
            block = np.zeros((n_max + 1, self.dim, self.dim), dtype=complex)
            for n in range(n_max + 1):
                if n + i >= 0:
                    block[n] = h_arr[n] @ table[n] @ h_inv[n + i]
            out[i] = block
        return DiffOp(out, n_max, self.dim)

    def apply(self, fam, x, n: int) -> np.ndarray:
        """(M . P)(x, n) for a family with a ``value(x, n)`` method."""
        if n < 0 or n > self.n_max:
            raise ValueError(f"n = {n} outside the tabulated range "
                             f"0..{self.n_max}")
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape + (self.dim, self.dim), dtype=complex)
        for j in self.coeff:
            out += self.coefficient(j, n) @ fam.value(x, n + j)
        return out

    def __repr__(self) -> str:
        return f"DiffOp(band={self.band}, n_max={self.n_max}, dim={self.dim})"


def recurrence_operator(fam) -> DiffOp:
    """Jacobi operator L = d + B(n) + C(n) d^{-1} of a family.

    Applying L to the family multiplies by x; this is the image of x
    under the recurrence.  B is tabulated one index less than C and H,
    so the operator range is n_max - 1.
    """
    n_max = fam.n_max - 1
    dim = fam.dim
    eye = np.broadcast_to(np.eye(dim, dtype=complex),
                          (n_max + 1, dim, dim)).copy()
    b_table = np.stack(fam.B[: n_max + 1])
    c_table = np.stack(fam.C[: n_max + 1])
    return DiffOp({1: eye, 0: b_table, -1: c_table}, n_max, dim)


def op_poly(l_op: DiffOp, coeffs) -> DiffOp:
    """q(L) = sum_m q_m L^m for scalar coefficients q (constant first)."""
    coeffs = np.asarray(getattr(coeffs, "coef", coeffs))
    out = DiffOp.constant(coeffs[0] * np.eye(l_op.dim), l_op.n_max)
    power = None
    for m in range(1, coeffs.shape[0]):
        power = l_op if power is None else l_op.compose(power)
        if coeffs[m] != 0:
            out = out + coeffs[m] * power
    return out
