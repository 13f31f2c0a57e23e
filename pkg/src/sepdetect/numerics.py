"""Dense complex linear-algebra kernel for small bipartite systems.

Every function is pure: inputs are validated, never mutated, and results are
freshly allocated arrays.  Matrices here are plain numpy arrays; bipartite
structure enters only through explicit ``(m, n)`` dimension arguments.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ky_fan_norm", "singular_values", "kron", "partial_transpose", "realign"]


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    mat = np.asarray(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D matrix, got shape {mat.shape}")
    if not np.isfinite(mat).all():
        raise ValueError(f"{name} contains non-finite entries")
    return mat


def _as_bipartite(rho, m: int, n: int) -> np.ndarray:
    mat = _as_matrix(rho, "state matrix")
    if mat.shape != (m * n, m * n):
        raise ValueError(
            f"state matrix has shape {mat.shape}, expected "
            f"({m * n}, {m * n}) for bipartition ({m}, {n})"
        )
    return mat


def singular_values(a) -> np.ndarray:
    """Singular values of ``a`` in descending order."""
    return np.linalg.svd(_as_matrix(a), compute_uv=False)


def ky_fan_norm(a) -> float:
    """Sum of all singular values of ``a`` (the trace norm).

    The matrix need not be square.  The result is nonnegative and vanishes
    exactly for the zero matrix.
    """
    return float(singular_values(a).sum())


def kron(a, b) -> np.ndarray:
    """Kronecker product, shape ``(ra*rb, ca*cb)``.

    Composite indices follow the row-major convention
    ``kron(a, b)[i1*rb + i2, j1*cb + j2] = a[i1, j1] * b[i2, j2]``.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def partial_transpose(rho, m: int, n: int) -> np.ndarray:
    """Transpose the second tensor factor of an ``(m*n, m*n)`` matrix.

    Hermiticity and trace are preserved, and the operation is an involution.
    A negative eigenvalue of the result certifies entanglement of a state.
    """
    mat = _as_bipartite(rho, m, n)
    return mat.reshape(m, n, m, n).transpose(0, 3, 2, 1).reshape(m * n, m * n)


def realign(rho, m: int, n: int) -> np.ndarray:
    """Reshuffle an ``(m*n, m*n)`` matrix into the ``(m*m, n*n)`` layout
    ``R[(i,j), (k,l)] = rho[(i,k), (j,l)]``.

    For a product ``rho_a (x) rho_b`` the result is the outer product of the
    row-major vectorisations of the two factors, so its trace norm is
    ``sqrt(tr(rho_a^2) * tr(rho_b^2))``.
    """
    mat = _as_bipartite(rho, m, n)
    return mat.reshape(m, n, m, n).transpose(0, 2, 1, 3).reshape(m * m, n * n)
