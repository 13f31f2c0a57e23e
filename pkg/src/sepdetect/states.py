"""Bipartite density matrices: the core state type, built-in one-parameter
families, seeded random generators and the state mini-language.

Composite indices follow row-major order: basis ket ``|i, j>`` of an m (x) n
system sits at index ``i*n + j`` (first factor slowest).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import kron
from .specs import coerce_fields, split_spec

__all__ = [
    "DensityMatrix",
    "StateFamily",
    "isotropic",
    "horodecki_3x3",
    "horodecki_mixture",
    "bound_2x4",
    "bound_2x4_mixture",
    "two_qubit_ex2",
    "two_qubit_ex4",
    "random_density",
    "random_separable",
    "parse_state",
    "family",
    "load_state_file",
]

HERMITICITY_TOL = 1e-8
TRACE_TOL = 1e-8

SEED_ENV_VAR = "SEPDETECT_SEED"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Complex square matrix tagged with a bipartition ``(m, n)``.

    Hermiticity and unit trace are enforced at construction (both to 1e-8).
    Positivity is deliberately not checked here: factories below produce
    positive matrices by construction, and downstream consumers that care
    (``bloch.decompose``) warn on significantly negative eigenvalues.
    """

    m: int
    n: int
    mat: np.ndarray

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"bipartition dimensions must be >= 2, got ({self.m}, {self.n})")
        mat = np.array(self.mat, dtype=complex)
        d = self.m * self.n
        if mat.shape != (d, d):
            raise ValueError(
                f"matrix shape {mat.shape} does not match bipartition "
                f"({self.m}, {self.n}); expected ({d}, {d})"
            )
        if not np.isfinite(mat).all():
            raise ValueError("matrix contains non-finite entries")
        herm_dev = float(np.abs(mat - mat.conj().T).max())
        if herm_dev > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |rho - rho^dag| = {herm_dev:.3e}")
        trace = complex(mat.trace())
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"matrix trace deviates from 1: trace = {trace:.12g}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.m * self.n

    def __repr__(self) -> str:  # keep reprs short; the matrix can be large
        return f"DensityMatrix(m={self.m}, n={self.n}, dim={self.dim})"


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def isotropic(d1: int, d2: int, p: float) -> DensityMatrix:
    """Mixture of white noise with a maximally entangled state.

    ``rho_p = (1-p)/(d1*d2) * I + p |psi+><psi+|`` where
    ``|psi+> = sum_i |i,i> / sqrt(d1)`` pairs the first ``d1`` basis vectors
    of both sides.  Requires ``2 <= d1 <= d2`` and ``p in [0, 1]``.
    """
    if not 2 <= d1 <= d2:
        raise ValueError(f"isotropic family needs 2 <= d1 <= d2, got d1={d1}, d2={d2}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"isotropic mixing parameter p={p:.12g} outside [0, 1]")
    psi = np.zeros(d1 * d2, dtype=complex)
    for i in range(d1):
        psi[i * d2 + i] = 1.0
    psi /= np.sqrt(d1)
    mat = (1.0 - p) / (d1 * d2) * np.eye(d1 * d2) + p * np.outer(psi, psi.conj())
    return DensityMatrix(d1, d2, mat)


def horodecki_3x3(x: float) -> DensityMatrix:
    """The 3 (x) 3 bound entangled family with parameter ``x in (0, 1)``.

    Positive under partial transposition for every ``x`` in the open
    interval, yet entangled.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"horodecki family needs x in (0, 1), got x={x:.12g}")
    h = (1.0 + x) / 2.0
    e = np.sqrt(1.0 - x * x) / 2.0
    mat = np.array(
        [
            [x, 0, 0, 0, x, 0, 0, 0, x],
            [0, x, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, x, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, x, 0, 0, 0, 0, 0],
            [x, 0, 0, 0, x, 0, 0, 0, x],
            [0, 0, 0, 0, 0, x, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, h, 0, e],
            [0, 0, 0, 0, 0, 0, 0, x, 0],
            [x, 0, 0, 0, x, 0, e, 0, h],
        ],
        dtype=complex,
    )
    return DensityMatrix(3, 3, mat / (8.0 * x + 1.0))


def horodecki_mixture(x: float, q: float) -> DensityMatrix:
    """White-noise mixture ``q * horodecki_3x3(x) + (1-q) * I/9``."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"mixing weight q={q:.12g} outside [0, 1]")
    mat = q * horodecki_3x3(x).mat + (1.0 - q) * np.eye(9) / 9.0
    return DensityMatrix(3, 3, mat)


def bound_2x4(d: float) -> DensityMatrix:
    """The 2 (x) 4 bound entangled family with parameter ``d in (0, 1)``."""
    if not 0.0 < d < 1.0:
        raise ValueError(f"bound2x4 family needs d in (0, 1), got d={d:.12g}")
    h = (1.0 + d) / 2.0
    e = np.sqrt(1.0 - d * d) / 2.0
    mat = np.array(
        [
            [d, 0, 0, 0, 0, d, 0, 0],
            [0, d, 0, 0, 0, 0, d, 0],
            [0, 0, d, 0, 0, 0, 0, d],
            [0, 0, 0, d, 0, 0, 0, 0],
            [0, 0, 0, 0, h, 0, 0, e],
            [d, 0, 0, 0, 0, d, 0, 0],
            [0, d, 0, 0, 0, 0, d, 0],
            [0, 0, d, 0, e, 0, 0, h],
        ],
        dtype=complex,
    )
    return DensityMatrix(2, 4, mat / (7.0 * d + 1.0))


def bound_2x4_mixture(d: float, x: float) -> DensityMatrix:
    """``x |xi><xi| + (1-x) * bound_2x4(d)`` with ``|xi> = (|00> + |11>)/sqrt(2)``.

    In the 2 (x) 4 indexing ``|11>`` is basis vector 5.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"mixing weight x={x:.12g} outside [0, 1]")
    xi = np.zeros(8, dtype=complex)
    xi[0] = xi[5] = 1.0 / np.sqrt(2.0)
    mat = x * np.outer(xi, xi.conj()) + (1.0 - x) * bound_2x4(d).mat
    return DensityMatrix(2, 4, mat)


def two_qubit_ex2(p: float) -> DensityMatrix:
    """Rank-2 two-qubit mixture ``p |psi><psi| + (1-p) |00><00|`` with
    ``|psi> = (|01> + |10>)/sqrt(2)``; entangled for every ``p > 0``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight p={p:.12g} outside [0, 1]")
    psi = np.zeros(4, dtype=complex)
    psi[1] = psi[2] = 1.0 / np.sqrt(2.0)
    v00 = np.zeros(4, dtype=complex)
    v00[0] = 1.0
    mat = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.outer(v00, v00.conj())
    return DensityMatrix(2, 2, mat)


def two_qubit_ex4(a1: float, a2: float, a3: float) -> DensityMatrix:
    """Three-parameter two-qubit state; positivity of the parameters is
    checked, not assumed.

    Positivity requires ``a2 >= a1``, ``-1 <= a1``, ``a2 <= 1`` and
    ``a3^2 <= (1+a1)(1-a2)``.  Both off-diagonal corners carry ``a3``.
    """
    mat = 0.5 * np.array(
        [
            [1.0 + a1, 0, 0, a3],
            [0, 0, 0, 0],
            [0, 0, a2 - a1, 0],
            [a3, 0, 0, 1.0 - a2],
        ],
        dtype=complex,
    )
    min_eig = float(np.linalg.eigvalsh(mat).min())
    if min_eig < -1e-10:
        raise ValueError(
            f"parameters (a1={a1:.12g}, a2={a2:.12g}, a3={a3:.12g}) give a "
            f"non-positive matrix (min eigenvalue {min_eig:.3e})"
        )
    return DensityMatrix(2, 2, mat)


# ---------------------------------------------------------------------------
# seeded random states
# ---------------------------------------------------------------------------

def random_density(m: int, n: int, rank: int, seed: int) -> DensityMatrix:
    """Random state ``G G^dag / tr`` with complex Gaussian ``G`` of the given
    rank.  The seed fully determines the output."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(m * n, rank)) + 1j * rng.normal(size=(m * n, rank))
    mat = g @ g.conj().T
    return DensityMatrix(m, n, mat / mat.trace().real)


def random_separable(m: int, n: int, terms: int, seed: int) -> DensityMatrix:
    """Explicit convex mixture of random product pure states.

    Guaranteed separable, so no sound criterion may flag the output.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.uniform(size=terms)
    weights /= weights.sum()
    mat = np.zeros((m * n, m * n), dtype=complex)
    for w in weights:
        va = rng.normal(size=m) + 1j * rng.normal(size=m)
        vb = rng.normal(size=n) + 1j * rng.normal(size=n)
        va /= np.linalg.norm(va)
        vb /= np.linalg.norm(vb)
        mat += w * kron(np.outer(va, va.conj()), np.outer(vb, vb.conj()))
    return DensityMatrix(m, n, mat)


# ---------------------------------------------------------------------------
# state mini-language and one-parameter families
# ---------------------------------------------------------------------------

# name -> (builder, schema, optional keys)
_STATE_SCHEMAS: dict[str, tuple[Callable[..., DensityMatrix], dict[str, type], set[str]]] = {
    "isotropic": (isotropic, {"d1": int, "d2": int, "p": float}, set()),
    "horodecki": (horodecki_mixture, {"x": float, "q": float}, set()),
    "bound2x4": (bound_2x4_mixture, {"d": float, "x": float}, set()),
    "ex2": (two_qubit_ex2, {"p": float}, set()),
    "ex4": (two_qubit_ex4, {"a1": float, "a2": float, "a3": float}, set()),
    "random": (
        lambda M, N, rank, seed: random_density(M, N, rank, seed),
        {"M": int, "N": int, "rank": int, "seed": int},
        {"seed"},
    ),
}

# declared sweep domains for the float parameters of each family
_PARAM_DOMAINS: dict[tuple[str, str], tuple[float, float]] = {
    ("isotropic", "p"): (0.0, 1.0),
    ("horodecki", "x"): (0.0, 1.0),
    ("horodecki", "q"): (0.0, 1.0),
    ("bound2x4", "d"): (0.0, 1.0),
    ("bound2x4", "x"): (0.0, 1.0),
    ("ex2", "p"): (0.0, 1.0),
    ("ex4", "a1"): (-1.0, 1.0),
    ("ex4", "a2"): (-1.0, 1.0),
    ("ex4", "a3"): (-1.0, 1.0),
}


def load_state_file(path: str, m: int, n: int) -> DensityMatrix:
    """Read a plain-text complex matrix: one row per line, whitespace-separated
    entries written like ``0.5``, ``1+2i`` or ``-0.25i``."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([complex(tok.replace("i", "j")) for tok in line.split()])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: unparseable matrix entry") from None
    if not rows:
        raise ValueError(f"{path}: no matrix rows found")
    return DensityMatrix(m, n, np.array(rows, dtype=complex))


def _build_state(name: str, fields: dict[str, str]) -> DensityMatrix:
    if name not in _STATE_SCHEMAS:
        raise ValueError(f"unknown state family {name!r} (known: {', '.join(sorted(_STATE_SCHEMAS))})")
    builder, schema, optional = _STATE_SCHEMAS[name]
    if name == "random" and "seed" not in fields:
        fields = dict(fields, seed=os.environ.get(SEED_ENV_VAR, "0"))
    kwargs = coerce_fields(name, fields, schema, required=set(schema) - optional)
    return builder(**kwargs)


def parse_state(spec: str, dims: tuple[int, int] | None = None) -> DensityMatrix:
    """Evaluate a state spec string like ``isotropic:d1=2,d2=3,p=0.4``.

    ``file:<path>`` reads a plain-text matrix and requires ``dims=(m, n)``.
    """
    if spec.strip().startswith("file:"):
        path = spec.strip()[len("file:"):]
        if not path:
            raise ValueError("file: spec needs a path, e.g. file:state.txt")
        if dims is None:
            raise ValueError("file: specs need explicit dimensions (--dims M,N)")
        return load_state_file(path, dims[0], dims[1])
    name, fields = split_spec(spec)
    return _build_state(name, fields)


@dataclass(frozen=True, eq=False)
class StateFamily:
    """One-parameter curve of density matrices, evaluated by ``at``.

    Built-in families resolve through the registry; a custom ``evaluator``
    callable may replace the registry lookup.
    """

    name: str
    fixed: dict[str, str]
    param: str
    domain: tuple[float, float]
    evaluator: Callable[[float], DensityMatrix] | None = None

    @property
    def label(self) -> str:
        fixed = ",".join(f"{k}={v}" for k, v in self.fixed.items())
        return f"{self.name}:{fixed}" if fixed else self.name

    def at(self, value: float) -> DensityMatrix:
        try:
            if self.evaluator is not None:
                return self.evaluator(float(value))
            fields = dict(self.fixed)
            fields[self.param] = repr(float(value))
            return _build_state(self.name, fields)
        except ValueError as err:
            raise ValueError(
                f"family '{self.label}' failed at {self.param}={value:.12g}: {err}"
            ) from err


def family(spec: str, param: str) -> StateFamily:
    """Build a :class:`StateFamily` from a partial state spec plus the name of
    the free parameter, e.g. ``family("bound2x4:d=0.9", "x")``."""
    name, fixed = split_spec(spec)
    if name not in _STATE_SCHEMAS:
        raise ValueError(f"unknown state family {name!r} (known: {', '.join(sorted(_STATE_SCHEMAS))})")
    _, schema, _ = _STATE_SCHEMAS[name]
    if param not in schema:
        raise ValueError(f"family {name!r} has no parameter {param!r} (allowed: {', '.join(sorted(schema))})")
    if schema[param] is not float:
        raise ValueError(f"parameter {param!r} of {name!r} is not a real scan parameter")
    if param in fixed:
        raise ValueError(f"parameter {param!r} is already fixed in {spec!r}")
    unknown = set(fixed) - set(schema)
    if unknown:
        raise ValueError(f"unknown key(s) {sorted(unknown)} for '{name}'")
    domain = _PARAM_DOMAINS.get((name, param), (-np.inf, np.inf))
    return StateFamily(name=name, fixed=fixed, param=param, domain=domain)
