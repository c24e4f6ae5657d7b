"""Dense complex matrix helpers shared by every other module.

All matrices are square numpy arrays with complex128 entries.  The
residual convention used throughout the package lives here as well:
a residual is a Frobenius norm divided by max(1, norm of the largest
participating term), so identities between large matrices are judged
relatively and identities between small ones absolutely.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

__all__ = [
    "frob",
    "rel_residual",
    "is_hermitian",
    "nilpotency_index",
    "mat_exp",
    "unit_lower_inverse",
    "cholesky",
]


def as_matrix(a) -> np.ndarray:
    """Coerce input to a square complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def frob(m) -> float:
    return float(np.linalg.norm(m, "fro"))


def rel_residual(residual, *terms) -> float:
    """Frobenius norm of ``residual`` over max(1, largest term norm)."""
    scale = 1.0
    for t in terms:
        scale = max(scale, frob(t))
    return frob(residual) / scale


def is_hermitian(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return frob(m - m.conj().T) <= tol * max(1.0, frob(m))


def nilpotency_index(a) -> int | None:
    """Smallest m with a^m = 0, or None if a is not nilpotent."""
    a = as_matrix(a)
    n = a.shape[0]
    p = np.eye(n, dtype=complex)
    for m in range(n + 1):
        if frob(p) == 0.0:
            return m
        p = p @ a
    return None


def mat_exp(a, x: float | complex = 1.0) -> np.ndarray:
    """Matrix exponential e^{x a}.

    Nilpotent input is detected exactly and the series terminated, so
    the exponential of a strictly triangular matrix is exact.  General
    input goes through scaling-and-squaring with a truncated Taylor
    series (relative tolerance 1e-14).
    """
    a = as_matrix(a)
    n = a.shape[0]
    b = x * a
    idx = nilpotency_index(a)
    if idx is not None:
        out = np.eye(n, dtype=complex)
        term = np.eye(n, dtype=complex)
        for k in range(1, idx):
            term = term @ b / k
            out = out + term
        return out
    nrm = np.linalg.norm(b, 1)
    s = max(0, int(np.ceil(np.log2(max(nrm, 1e-300)))) + 1) if nrm > 0.5 else 0
    c = b / (2**s)
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    k = 1
    while True:
        term = term @ c / k
        out = out + term
        if frob(term) <= 1e-14 * frob(out):
            break
        k += 1
        if k > 200:  # series cannot stall for a scaled matrix
            raise RuntimeError("matrix exponential series did not converge")
    for _ in range(s):
        out = out @ out
    return out


def unit_lower_inverse(l) -> np.ndarray:
    """Invert a unit lower-triangular matrix by forward substitution."""
    l = as_matrix(l)
    n = l.shape[0]
    if np.max(np.abs(np.diagonal(l) - 1.0)) > 1e-12:
        raise ValueError("matrix does not have a unit diagonal")
    if frob(np.triu(l, 1)) > 1e-12 * max(1.0, frob(l)):
        raise ValueError("matrix is not lower triangular")
    return solve_triangular(l, np.eye(n, dtype=complex), lower=True,
                            unit_diagonal=True)


def cholesky(t) -> np.ndarray:
    """Cholesky factor K with t = K K*.

    Raises
    ------
    ValueError
        If the input is not Hermitian or not positive definite.
    """
    t = as_matrix(t)
    if not is_hermitian(t, tol=1e-10):
        raise ValueError("matrix is not Hermitian")
    try:
        return np.linalg.cholesky(0.5 * (t + t.conj().T))
    except np.linalg.LinAlgError as exc:
        raise ValueError("matrix is not positive definite") from exc
