"""Traceless Hermitian generator bases and the correlation-tensor
decomposition of bipartite states.

A state rho on an m (x) n system is expanded as

    rho = (I + sum_k r_k g_k (x) I + sum_l s_l I (x) h_l
             + sum_kl t_kl g_k (x) h_l) / (m*n)

over generator bases {g_k} of dimension m and {h_l} of dimension n with
Tr(g_i g_j) = 2 delta_ij.  The coefficients are recovered by traces:
r_k = (m/2) Tr(rho g_k (x) I), s_l = (n/2) Tr(rho I (x) h_l) and
t_kl = (m*n/4) Tr(rho g_k (x) h_l).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import DensityMatrix

__all__ = ["generators", "decompose", "reconstruct", "BlochDecomposition"]

PSD_WARN_TOL = 1e-8
IMAG_RESIDUE_TOL = 1e-10


@lru_cache(maxsize=None)
def _generator_stack(d: int) -> np.ndarray:
    out = np.zeros((d * d - 1, d, d), dtype=complex)
    idx = 0
    # diagonal generators: identity on the first l+1 levels, -(l+1) on level l+1
    for level in range(d - 1):
        scale = np.sqrt(2.0 / ((level + 1) * (level + 2)))
        for i in range(level + 1):
            out[idx, i, i] = scale
        out[idx, level + 1, level + 1] = -scale * (level + 1)
        idx += 1
    for j in range(d):
        for k in range(j + 1, d):
            out[idx, j, k] = 1.0
            out[idx, k, j] = 1.0
            idx += 1
    for j in range(d):
        for k in range(j + 1, d):
            out[idx, j, k] = -1.0j
            out[idx, k, j] = 1.0j
            idx += 1
    out.setflags(write=False)
    return out


def generators(d: int) -> np.ndarray:
    """The ``d*d - 1`` traceless Hermitian generators as a read-only stack of
    shape ``(d*d - 1, d, d)`` with ``Tr(g_i g_j) = 2 delta_ij``.

    Canonical order: the ``d - 1`` diagonal generators first, then the
    symmetric off-diagonal pairs in lexicographic ``(j, k)`` order, then the
    antisymmetric pairs in the same order.  For ``d = 2`` that is
    ``(sigma_z, sigma_x, sigma_y)``.
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise ValueError(f"generator dimension must be an integer >= 2, got {d!r}")
    return _generator_stack(int(d))


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Local vectors ``r`` (length m^2-1), ``s`` (length n^2-1) and the
    correlation matrix ``t`` of shape (m^2-1, n^2-1), all real."""

    m: int
    n: int
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        s = np.array(self.s, dtype=float)
        t = np.array(self.t, dtype=float)
        if r.shape != (self.m ** 2 - 1,):
            raise ValueError(f"r has shape {r.shape}, expected ({self.m ** 2 - 1},)")
        if s.shape != (self.n ** 2 - 1,):
            raise ValueError(f"s has shape {s.shape}, expected ({self.n ** 2 - 1},)")
        if t.shape != (self.m ** 2 - 1, self.n ** 2 - 1):
            raise ValueError(
                f"t has shape {t.shape}, expected ({self.m ** 2 - 1}, {self.n ** 2 - 1})"
            )
        for name, arr in (("r", r), ("s", s), ("t", t)):
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} contains non-finite entries")
            arr.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)


def decompose(state: DensityMatrix) -> BlochDecomposition:
    """Expand a state over the generator bases of its two factors.

    Warns when the input has an eigenvalue below -1e-8 (the expansion itself
    does not require positivity).  Raises if the computed coefficients carry
    an imaginary residue above 1e-10, which indicates an input Hermitian only
    marginally within tolerance.
    """
    m, n = state.m, state.n
    min_eig = float(np.linalg.eigvalsh(state.mat).min())
    if min_eig < -PSD_WARN_TOL:
        warnings.warn(
            f"input has negative eigenvalue {min_eig:.3e}; coefficients are "
            "still well defined but the matrix is not a physical state",
            stacklevel=2,
        )
    g_m = _generator_stack(m)
    g_n = _generator_stack(n)
    rho4 = state.mat.reshape(m, n, m, n)
    r = m / 2.0 * np.einsum("ikjk,aji->a", rho4, g_m)
    s = n / 2.0 * np.einsum("ikil,alk->a", rho4, g_n)
    t = m * n / 4.0 * np.einsum("ikjl,aji,blk->ab", rho4, g_m, g_n)
    residue = max(float(np.abs(v.imag).max()) for v in (r, s, t))
    if residue > IMAG_RESIDUE_TOL:
        raise ValueError(
            f"decomposition has imaginary residue {residue:.3e} "
            f"(> {IMAG_RESIDUE_TOL:g}); input is too far from Hermitian"
        )
    return BlochDecomposition(m=m, n=n, r=r.real, s=s.real, t=t.real)


def reconstruct(dec: BlochDecomposition) -> DensityMatrix:
    """Rebuild the matrix from its coefficients.

    Inverse of :func:`decompose`.  The result is always Hermitian with unit
    trace, but arbitrary coefficients need not give a positive matrix; no
    positivity check is performed.
    """
    m, n = dec.m, dec.n
    g_m = _generator_stack(m)
    g_n = _generator_stack(n)
    eye_m = np.eye(m, dtype=complex)
    eye_n = np.eye(n, dtype=complex)
    rho4 = np.einsum("ij,kl->ikjl", eye_m, eye_n)
    rho4 = rho4 + np.einsum("a,aij,kl->ikjl", dec.r, g_m, eye_n)
    rho4 = rho4 + np.einsum("b,ij,bkl->ikjl", dec.s, eye_m, g_n)
    rho4 = rho4 + np.einsum("ab,aij,bkl->ikjl", dec.t, g_m, g_n)
    return DensityMatrix(m, n, rho4.reshape(m * n, m * n) / (m * n))
