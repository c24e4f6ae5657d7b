"""Matrix-valued polynomials in one real variable.

Coefficients are stored constant-first in an array of shape
(degree+1, N, N).  Evaluation broadcasts over arrays of points and
returns stacks of matrices, which is what the quadrature code wants.
"""

from __future__ import annotations

import numpy as np

__all__ = ["MatrixPoly", "scalar_poly"]


def scalar_poly(coeffs) -> np.polynomial.Polynomial:
    """Scalar polynomial from constant-first coefficients."""
    return np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))


class MatrixPoly:
    """Polynomial with square-matrix coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 3 or c.shape[1] != c.shape[2]:
            raise ValueError(f"coefficient array has shape {c.shape}, "
                             "expected (degree+1, N, N)")
        self.coeffs = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MatrixPoly":
        return cls(np.zeros((1, n, n), dtype=complex))

    @classmethod
    def identity(cls, n: int) -> "MatrixPoly":
        return cls(np.eye(n, dtype=complex)[None, :, :])

    @classmethod
    def monomial(cls, degree: int, n: int) -> "MatrixPoly":
        """x^degree times the identity."""
        c = np.zeros((degree + 1, n, n), dtype=complex)
        c[degree] = np.eye(n)
        return cls(c)

    @classmethod
    def constant(cls, m) -> "MatrixPoly":
        m = np.asarray(m, dtype=complex)
        return cls(m[None, :, :])

    @classmethod
    def from_scalar(cls, p, n: int) -> "MatrixPoly":
        """Scalar polynomial (constant-first coefficients) times identity."""
        c = np.asarray(getattr(p, "coef", p), dtype=complex)
        return cls(c[:, None, None] * np.eye(n)[None, :, :])

    # -- basic properties ---------------------------------------------
    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self) -> int:
        """Degree after trimming trailing (near-)zero coefficients."""
        for d in range(self.coeffs.shape[0] - 1, -1, -1):
            if np.any(self.coeffs[d] != 0):
                return d
        return 0

    def coefficient(self, k: int) -> np.ndarray:
        if 0 <= k < self.coeffs.shape[0]:
            return self.coeffs[k]
        return np.zeros((self.dim, self.dim), dtype=complex)

    def trim(self, tol: float = 0.0) -> "MatrixPoly":
        d = self.coeffs.shape[0] - 1
        while d > 0 and np.max(np.abs(self.coeffs[d])) <= tol:
            d -= 1
        return MatrixPoly(self.coeffs[: d + 1])

    # -- evaluation ----------------------------------------------------
    def __call__(self, x) -> np.ndarray:
        """Evaluate by Horner's rule.

        Scalar ``x`` gives an (N, N) matrix; an array of K points gives
        a (K, N, N) stack.
        """
        x = np.asarray(x, dtype=complex)
        scalar = x.ndim == 0
        xs = x.reshape(-1)
        out = np.broadcast_to(self.coeffs[-1], (xs.size,) + self.coeffs.shape[1:]).copy()
        for k in range(self.coeffs.shape[0] - 2, -1, -1):
            out *= xs[:, None, None]
            out += self.coeffs[k]
        return out[0] if scalar else out.reshape(x.shape + self.coeffs.shape[1:])

    def deriv(self) -> "MatrixPoly":
        if self.coeffs.shape[0] == 1:
            return MatrixPoly.zero(self.dim)
        ks = np.arange(1, self.coeffs.shape[0])
        return MatrixPoly(self.coeffs[1:] * ks[:, None, None])

    # -- algebra ---------------------------------------------------------
    def _aligned(self, other: "MatrixPoly"):
        d = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros((d,) + self.coeffs.shape[1:], dtype=complex)
        b = np.zeros_like(a)
        a[: self.coeffs.shape[0]] = self.coeffs
        b[: other.coeffs.shape[0]] = other.coeffs
        return a, b

    def __add__(self, other: "MatrixPoly") -> "MatrixPoly":
        a, b = self._aligned(other)
        return MatrixPoly(a + b)

    def __sub__(self, other: "MatrixPoly") -> "MatrixPoly":
        a, b = self._aligned(other)
        return MatrixPoly(a - b)

    def __neg__(self) -> "MatrixPoly":
        return MatrixPoly(-self.coeffs)

    def __mul__(self, scalar) -> "MatrixPoly":
        return MatrixPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def lmul(self, m) -> "MatrixPoly":
        """Constant matrix times polynomial: m P(x)."""
        return MatrixPoly(np.asarray(m, dtype=complex)[None] @ self.coeffs)

    def rmul(self, m) -> "MatrixPoly":
        """Polynomial times constant matrix: P(x) m."""
        return MatrixPoly(self.coeffs @ np.asarray(m, dtype=complex)[None])

    def matmul(self, other: "MatrixPoly") -> "MatrixPoly":
        """Polynomial product P(x) Q(x) (coefficient convolution)."""
        da, db = self.coeffs.shape[0], other.coeffs.shape[0]
        n = self.dim
        out = np.zeros((da + db - 1, n, n), dtype=complex)
        for i in range(da):
            out[i : i + db] += self.coeffs[i] @ other.coeffs
        return MatrixPoly(out)

    def mul_scalar_poly(self, p) -> "MatrixPoly":
        """Multiply by a scalar polynomial (constant-first coefficients)."""
        c = np.asarray(getattr(p, "coef", p), dtype=complex)
        da, db = self.coeffs.shape[0], c.shape[0]
        out = np.zeros((da + db - 1,) + self.coeffs.shape[1:], dtype=complex)
        for i in range(db):
            out[i : i + da] += c[i] * self.coeffs
        return MatrixPoly(out)

    def x_times(self) -> "MatrixPoly":
        """Multiply by x."""
        n = self.dim
        return MatrixPoly(np.concatenate(
            [np.zeros((1, n, n), dtype=complex), self.coeffs]))

    def conj_t(self) -> "MatrixPoly":
        """P(x)* for real x: conjugate-transpose every coefficient."""
        return MatrixPoly(np.conj(np.swapaxes(self.coeffs, 1, 2)))

    def __repr__(self) -> str:
        return f"MatrixPoly(degree={self.degree}, dim={self.dim})"
