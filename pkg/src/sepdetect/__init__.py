"""sepdetect: entanglement detection for bipartite density matrices.

The package expands states over traceless Hermitian generator bases, builds
weighted block extensions of the correlation matrix, and certifies
entanglement whenever a trace norm exceeds its separable-state bound.
Partial-transposition and realignment tests are included as baselines, and a
scan engine locates detection thresholds along one-parameter state families.

Quick start::

    from sepdetect import isotropic, corollary2
    verdict = corollary2(isotropic(2, 3, 0.5), a=2**0.5, b=6**0.5)
    verdict.entangled   # True
"""

from .bloch import BlochDecomposition, decompose, generators, reconstruct
from .criteria import (
    CRITERION_NAMES,
    EPS_DETECT,
    CriterionSpec,
    Verdict,
    corollary2,
    de_vicente,
    enhanced_tprime,
    parse_criterion,
    ppt,
    realignment,
    shen,
    theorem1,
    theorem2,
    theorem3,
)
from .numerics import kron, ky_fan_norm, partial_transpose, realign, singular_values
from .scan import ScanResult, ScanRow, Threshold, sweep, threshold
from .states import (
    DensityMatrix,
    StateFamily,
    bound_2x4,
    bound_2x4_mixture,
    family,
    horodecki_3x3,
    horodecki_mixture,
    isotropic,
    parse_state,
    random_density,
    random_separable,
    two_qubit_ex2,
    two_qubit_ex4,
)

__version__ = "0.1.0"

__all__ = [
    "BlochDecomposition",
    "CRITERION_NAMES",
    "CriterionSpec",
    "DensityMatrix",
    "EPS_DETECT",
    "ScanResult",
    "ScanRow",
    "StateFamily",
    "Threshold",
    "Verdict",
    "bound_2x4",
    "bound_2x4_mixture",
    "corollary2",
    "de_vicente",
    "decompose",
    "enhanced_tprime",
    "family",
    "generators",
    "horodecki_3x3",
    "horodecki_mixture",
    "isotropic",
    "kron",
    "ky_fan_norm",
    "parse_criterion",
    "parse_state",
    "partial_transpose",
    "ppt",
    "random_density",
    "random_separable",
    "realign",
    "realignment",
    "reconstruct",
    "shen",
    "singular_values",
    "sweep",
    "theorem1",
    "theorem2",
    "theorem3",
    "threshold",
    "two_qubit_ex2",
    "two_qubit_ex4",
]
