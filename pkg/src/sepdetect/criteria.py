"""Separability criteria for bipartite states.

Each criterion computes a scalar ``lhs`` from the state and compares it with
a ``bound`` that every separable state provably satisfies, so
``lhs > bound`` certifies entanglement.  The block-matrix criteria assemble
an augmented correlation matrix from the decomposition coefficients
``(r, s, t)`` and take its trace norm; they are sound but not complete, and
an ``inconclusive`` verdict never asserts separability.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .bloch import BlochDecomposition, decompose
from .numerics import ky_fan_norm, partial_transpose, realign
from .specs import coerce_fields, split_spec
from .states import DensityMatrix

__all__ = [
    "EPS_DETECT",
    "Verdict",
    "CriterionSpec",
    "de_vicente",
    "enhanced_tprime",
    "shen",
    "theorem1",
    "corollary2",
    "theorem2",
    "theorem3",
    "ppt",
    "realignment",
    "parse_criterion",
    "CRITERION_NAMES",
]

# Margin added on top of each bound before declaring entanglement, so that
# floating-point noise can never produce a false positive.
EPS_DETECT = 1e-9


@dataclass(frozen=True)
class Verdict:
    """Outcome of one criterion evaluation."""

    lhs: float
    bound: float

    def __post_init__(self):
        if not (np.isfinite(self.lhs) and np.isfinite(self.bound)):
            raise ValueError(f"non-finite verdict: lhs={self.lhs}, bound={self.bound}")

    @property
    def violation(self) -> float:
        return self.lhs - self.bound

    @property
    def entangled(self) -> bool:
        return self.violation > EPS_DETECT

    @property
    def decision(self) -> str:
        return "entangled" if self.entangled else "inconclusive"

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "bound": self.bound,
            "violation": self.violation,
            "entangled": self.entangled,
        }


def _vector(v, name: str, allow_zero: bool = False) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a nonempty real vector")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    if not allow_zero and not arr.any():
        raise ValueError(f"{name} must be nonzero")
    return arr


def _augmented(dec: BlochDecomposition, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Block matrix [[alpha beta^t, alpha s^t], [r beta^t, t]]."""
    top = np.hstack([np.outer(alpha, beta), np.outer(alpha, dec.s)])
    bot = np.hstack([np.outer(dec.r, beta), dec.t])
    return np.vstack([top, bot])


def _weighted(dec: BlochDecomposition, a: float, b: float,
              alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Block matrix [[a*b, a alpha^t (x) s^t], [b beta (x) r, beta alpha^t (x) t]].

    beta replicates/weights the first-factor side (rows), alpha the
    second-factor side (columns).
    """
    top = np.hstack([[[a * b]], a * np.kron(alpha, dec.s)[None, :]])
    bot = np.hstack([b * np.kron(beta, dec.r)[:, None], np.kron(np.outer(beta, alpha), dec.t)])
    return np.vstack([top, bot])


def de_vicente(state: DensityMatrix) -> Verdict:
    """Trace norm of the bare correlation matrix against
    ``sqrt(m*n*(m-1)*(n-1)/4)``."""
    dec = decompose(state)
    m, n = state.m, state.n
    return Verdict(ky_fan_norm(dec.t), float(np.sqrt(m * n * (m - 1) * (n - 1) / 4.0)))


def enhanced_tprime(state: DensityMatrix) -> Verdict:
    """Correlation matrix augmented with the local vectors,
    ``[[1, s^t], [r, t]]``, against ``sqrt((m^2-m+2)(n^2-n+2))/2``.

    Identical to :func:`theorem1` with scalar weights ``alpha = beta = (1,)``.
    """
    dec = decompose(state)
    m, n = state.m, state.n
    lhs = ky_fan_norm(_augmented(dec, np.ones(1), np.ones(1)))
    bound = float(np.sqrt((m * m - m + 2) * (n * n - n + 2)) / 2.0)
    return Verdict(lhs, bound)


def shen(state: DensityMatrix, m_rows: int, a: float, b: float) -> Verdict:
    """Replicated-block criterion: the correlation matrix is padded with an
    ``m_rows x m_rows`` all-ones block scaled by ``a*b`` and with ``m_rows``
    copies of the local vectors scaled by ``a`` resp. ``b``.

    Bound: ``sqrt((2*m_rows*a^2 + m^2 - m) (2*m_rows*b^2 + n^2 - n)) / 2``.
    Coincides with :func:`theorem1` at ``alpha = a*ones``, ``beta = b*ones``.
    """
    if not isinstance(m_rows, (int, np.integer)) or m_rows < 1:
        raise ValueError(f"m_rows must be an integer >= 1, got {m_rows!r}")
    if a < 0 or b < 0:
        raise ValueError(f"weights must be nonnegative, got a={a:.12g}, b={b:.12g}")
    dec = decompose(state)
    m, n = state.m, state.n
    ones_block = a * b * np.ones((m_rows, m_rows))
    top = np.hstack([ones_block, a * np.tile(dec.s, (m_rows, 1))])
    bot = np.hstack([b * np.tile(dec.r, (m_rows, 1)).T, dec.t])
    lhs = ky_fan_norm(np.vstack([top, bot]))
    bound = 0.5 * float(
        np.sqrt((2 * m_rows * a * a + m * m - m) * (2 * m_rows * b * b + n * n - n))
    )
    return Verdict(lhs, bound)


def theorem1(state: DensityMatrix, alpha, beta) -> Verdict:
    """Vector-weighted augmented correlation matrix
    ``[[alpha beta^t, alpha s^t], [r beta^t, t]]`` against
    ``sqrt(|alpha|^2 + m(m-1)/2) * sqrt(|beta|^2 + n(n-1)/2)``.

    The trace norm depends on ``alpha`` and ``beta`` only through their
    Euclidean norms, so any same-norm replacement gives the same verdict.
    """
    alpha = _vector(alpha, "alpha")
    beta = _vector(beta, "beta")
    dec = decompose(state)
    m, n = state.m, state.n
    lhs = ky_fan_norm(_augmented(dec, alpha, beta))
    bound = float(
        np.sqrt(alpha @ alpha + m * (m - 1) / 2.0) * np.sqrt(beta @ beta + n * (n - 1) / 2.0)
    )
    return Verdict(lhs, bound)


def corollary2(state: DensityMatrix, a: float, b: float) -> Verdict:
    """Scalar-weighted form of :func:`theorem1`:
    ``[[a*b, a s^t], [b r, t]]`` against
    ``sqrt(a^2 + m(m-1)/2) * sqrt(b^2 + n(n-1)/2)``.

    At ``a = b = 0`` the verdict coincides with :func:`de_vicente`.
    """
    if a < 0 or b < 0:
        raise ValueError(f"weights must be nonnegative, got a={a:.12g}, b={b:.12g}")
    dec = decompose(state)
    m, n = state.m, state.n
    lhs = ky_fan_norm(_augmented(dec, np.array([float(a)]), np.array([float(b)])))
    bound = float(np.sqrt(a * a + m * (m - 1) / 2.0) * np.sqrt(b * b + n * (n - 1) / 2.0))
    return Verdict(lhs, bound)


def theorem2(state: DensityMatrix, a: float) -> Verdict:
    """Scalar-weighted matrix as in :func:`corollary2` on the constraint
    surface ``|b| = |a| sqrt(n(n-1)/(m(m-1)))`` (same sign as ``a``), against
    the additive bound ``sqrt(m*n*(m-1)*(n-1)/4) + |a*b|``.

    On the constraint surface this bound equals the :func:`corollary2` bound.
    """
    if not np.isfinite(a):
        raise ValueError(f"weight a must be finite, got {a!r}")
    dec = decompose(state)
    m, n = state.m, state.n
    b = float(np.sign(a)) * abs(a) * float(np.sqrt(n * (n - 1) / (m * (m - 1))))
    lhs = ky_fan_norm(_augmented(dec, np.array([float(a)]), np.array([b])))
    bound = float(np.sqrt(m * n * (m - 1) * (n - 1) / 4.0)) + abs(a * b)
    return Verdict(lhs, bound)


def theorem3(state: DensityMatrix, a: float, b: float, alpha, beta) -> Verdict:
    """Tensor-weighted block matrix
    ``[[a*b, a alpha^t (x) s^t], [b beta (x) r, beta alpha^t (x) t]]``
    against ``sqrt(a^2 + |beta|^2 m(m-1)/2) * sqrt(b^2 + |alpha|^2 n(n-1)/2)``.

    ``beta`` weights the first-factor side and ``alpha`` the second-factor
    side.  For scalar ``alpha = (k,)``, ``beta = (l,)`` the lhs equals
    ``k*l`` times the :func:`corollary2` lhs at ``(a/l, b/k)``.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ValueError(f"weights must be finite, got a={a!r}, b={b!r}")
    alpha = _vector(alpha, "alpha")
    beta = _vector(beta, "beta")
    dec = decompose(state)
    m, n = state.m, state.n
    lhs = ky_fan_norm(_weighted(dec, float(a), float(b), alpha, beta))
    bound = float(
        np.sqrt(a * a + (beta @ beta) * m * (m - 1) / 2.0)
        * np.sqrt(b * b + (alpha @ alpha) * n * (n - 1) / 2.0)
    )
    return Verdict(lhs, bound)


def ppt(state: DensityMatrix) -> Verdict:
    """Positive-partial-transpose test: ``lhs`` is minus the smallest
    eigenvalue of the partially transposed state, against bound 0.

    The lhs is negative for states whose partial transpose is strictly
    positive; the sign carries useful information for threshold searches.
    """
    pt = partial_transpose(state.mat, state.m, state.n)
    return Verdict(-float(np.linalg.eigvalsh(pt).min()), 0.0)


def realignment(state: DensityMatrix) -> Verdict:
    """Trace norm of the reshuffled state against 1."""
    return Verdict(ky_fan_norm(realign(state.mat, state.m, state.n)), 1.0)


# ---------------------------------------------------------------------------
# criterion mini-language
# ---------------------------------------------------------------------------

# name -> (schema, callable taking (state, **params))
_CRITERIA: dict[str, tuple[dict[str, type], Callable[..., Verdict]]] = {
    "devicente": ({}, lambda state: de_vicente(state)),
    "enhanced": ({}, lambda state: enhanced_tprime(state)),
    "shen": ({"m": int, "a": float, "b": float},
             lambda state, m, a, b: shen(state, m, a, b)),
    "theorem1": ({"alpha": tuple, "beta": tuple},
                 lambda state, alpha, beta: theorem1(state, alpha, beta)),
    "corollary2": ({"a": float, "b": float},
                   lambda state, a, b: corollary2(state, a, b)),
    "theorem2": ({"a": float}, lambda state, a: theorem2(state, a)),
    "theorem3": ({"a": float, "b": float, "alpha": tuple, "beta": tuple},
                 lambda state, a, b, alpha, beta: theorem3(state, a, b, alpha, beta)),
    "ppt": ({}, lambda state: ppt(state)),
    "realignment": ({}, lambda state: realignment(state)),
}

CRITERION_NAMES = tuple(sorted(_CRITERIA))


@dataclass(frozen=True, eq=False)
class CriterionSpec:
    """A named criterion bound to concrete parameter values; callable on a
    :class:`~sepdetect.states.DensityMatrix`."""

    name: str
    params: Mapping[str, object]

    def __post_init__(self):
        if self.name not in _CRITERIA:
            raise ValueError(
                f"unknown criterion {self.name!r} (known: {', '.join(CRITERION_NAMES)})"
            )
        schema, _ = _CRITERIA[self.name]
        unknown = set(self.params) - set(schema)
        missing = set(schema) - set(self.params)
        if unknown or missing:
            raise ValueError(
                f"criterion {self.name!r} takes exactly {sorted(schema) or 'no parameters'};"
                f" got {sorted(self.params)}"
            )
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def __call__(self, state: DensityMatrix) -> Verdict:
        _, fn = _CRITERIA[self.name]
        return fn(state, **self.params)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        rendered = []
        for key, value in self.params.items():
            if isinstance(value, tuple):
                rendered.append(f"{key}=[{','.join(f'{x:.12g}' for x in value)}]")
            else:
                rendered.append(f"{key}={value:.12g}")
        return f"{self.name}:{','.join(rendered)}"


def parse_criterion(spec: str) -> CriterionSpec:
    """Parse a criterion spec string such as ``corollary2:a=1.4,b=2.4`` or
    ``theorem1:alpha=[0.5,0.5],beta=[1,0]``."""
    name, fields = split_spec(spec)
    if name not in _CRITERIA:
        raise ValueError(f"unknown criterion {name!r} (known: {', '.join(CRITERION_NAMES)})")
    schema, _ = _CRITERIA[name]
    params = coerce_fields(name, fields, schema)
    return CriterionSpec(name=name, params=params)
