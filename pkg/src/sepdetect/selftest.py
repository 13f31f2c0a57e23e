"""Acceptance battery: ten numbered end-to-end checks with pinned tolerances.

Each item exercises the public API exactly the way a user would (families,
criteria, threshold search) and compares against independently derived
reference values.  ``run_all`` powers the ``sepdetect selftest`` subcommand;
the pytest suite runs the same items one per test.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bloch, criteria, scan, states
from .criteria import (
    CriterionSpec,
    corollary2,
    de_vicente,
    theorem1,
    theorem2,
    theorem3,
)
from .states import family, two_qubit_ex4

__all__ = ["Item", "ItemResult", "ITEMS", "run_all", "two_qubit_w_closed_form"]


@dataclass(frozen=True)
class ItemResult:
    number: int
    slug: str
    ok: bool
    detail: str
    seconds: float


@dataclass(frozen=True, eq=False)
class Item:
    number: int
    slug: str
    fn: Callable[[], tuple[bool, str]]

    def run(self) -> ItemResult:
        t0 = time.perf_counter()
        ok, detail = self.fn()
        return ItemResult(self.number, self.slug, ok, detail, time.perf_counter() - t0)


def two_qubit_w_closed_form(a1: float, a2: float, a3: float, x: float, y: float) -> float:
    """Closed form for the tensor-weighted criterion lhs on the three-parameter
    two-qubit family at ``alpha = beta = (1, 1)``, ``a = sqrt(2) x``,
    ``b = sqrt(2) y``.

    The eigenvalue pair ``lam_pm`` below gives the lhs in the scaled form
    ``|a3| + sqrt(lam+) + sqrt(lam-)``; the trace norm of the weighted block
    matrix itself is exactly 4 times that (the two normalisations of the same
    inequality differ by a factor 4 on both sides).
    """
    big = (1 + a1 - a2) ** 2 + a2 ** 2 * x ** 2 + a1 ** 2 * y ** 2 + x ** 2 * y ** 2
    rad = np.sqrt(max(big * big - 4 * (1 + a1) ** 2 * (1 - a2) ** 2 * x * x * y * y, 0.0))
    lam_plus = (big + rad) / 8.0
    lam_minus = max((big - rad) / 8.0, 0.0)
    return 4.0 * (abs(a3) + np.sqrt(lam_plus) + np.sqrt(lam_minus))


def _admissible_three_param(rng: np.random.Generator) -> tuple[float, float, float]:
    """Draw (a1, a2, a3) with the state positive by construction."""
    a1 = rng.uniform(-0.95, 0.95)
    a2 = rng.uniform(a1, 0.95)
    a3 = float(np.sqrt((1 + a1) * (1 - a2))) * rng.uniform(-0.99, 0.99)
    return float(a1), float(a2), float(a3)


_EX1_ALPHA = (1.0 / (2.0 * np.sqrt(3.0)), 1.0 / (2.0 * np.sqrt(3.0)))
_EX1_BETA = (1.0, 0.0)


def _item01_bound2x4_theorem1_threshold() -> tuple[bool, str]:
    fam = family("bound2x4:d=0.9", "x")
    crit = CriterionSpec("theorem1", {"alpha": _EX1_ALPHA, "beta": _EX1_BETA})
    t0 = time.perf_counter()
    found = scan.threshold(fam, crit, 0.0, 1.0, tol=1e-6)
    elapsed = time.perf_counter() - t0
    err = abs(found.value - 0.223406)
    ok = err <= 1e-4 and elapsed < 1.0
    return ok, (
        f"threshold {found.value:.6f} vs 0.223406 (|err| {err:.2e} <= 1e-4), "
        f"search took {elapsed:.3f} s (< 1 s)"
    )


def _item02_bound2x4_norm_invariance() -> tuple[bool, str]:
    fam = family("bound2x4:d=0.9", "x")
    base = scan.threshold(
        fam, CriterionSpec("theorem1", {"alpha": _EX1_ALPHA, "beta": _EX1_BETA}),
        0.0, 1.0, tol=1e-8,
    ).value
    rng = np.random.default_rng(21)
    worst = 0.0
    for _ in range(3):
        alpha = rng.normal(size=rng.integers(1, 4))
        alpha *= np.sqrt(1.0 / 6.0) / np.linalg.norm(alpha)
        beta = rng.normal(size=rng.integers(1, 4))
        beta /= np.linalg.norm(beta)
        crit = CriterionSpec("theorem1", {"alpha": tuple(alpha), "beta": tuple(beta)})
        other = scan.threshold(fam, crit, 0.0, 1.0, tol=1e-8).value
        worst = max(worst, abs(other - base))
    return worst <= 1e-6, (
        f"3 same-norm weight redraws: max threshold shift {worst:.2e} <= 1e-6"
    )


def _item03_two_qubit_closed_form() -> tuple[bool, str]:
    rng = np.random.default_rng(32)
    worst = 0.0
    for _ in range(100):
        a = float(rng.uniform(0.05, 3.0))
        p = float(rng.uniform(0.0, 1.0))
        lhs = corollary2(states.two_qubit_ex2(p), a, a).lhs
        closed = 2 * p + np.sqrt(4 * a * a * p * p + (2 * p - 1 - a * a) ** 2)
        worst = max(worst, abs(lhs - closed))
    if worst > 1e-10:
        return False, f"closed-form mismatch {worst:.2e} > 1e-10"
    missed = [p for p in (0.01, 0.1, 0.5, 1.0)
              if not theorem2(states.two_qubit_ex2(p), 1.0).entangled]
    dv_low = de_vicente(states.two_qubit_ex2(0.4))
    dv_high = de_vicente(states.two_qubit_ex2(0.6))
    ok = not missed and not dv_low.entangled and dv_high.entangled
    return ok, (
        f"closed form max err {worst:.2e} over 100 draws; additive-bound test "
        f"missed at p={missed or 'none'}; bare-correlation test at p=0.4 -> "
        f"{dv_low.decision}, p=0.6 -> {dv_high.decision}"
    )


def _item04_bound2x4_theorem3_threshold() -> tuple[bool, str]:
    fam = family("bound2x4:d=0.9", "x")
    crit = CriterionSpec(
        "theorem3",
        {"a": 1.0 / np.sqrt(6.0), "b": 1.0, "alpha": (1.0, 3.0), "beta": (1.0, -2.0)},
    )
    found = scan.threshold(fam, crit, 0.0, 1.0, tol=1e-6)
    err = abs(found.value - 0.22325)
    return err <= 1e-4, f"threshold {found.value:.6f} vs 0.22325 (|err| {err:.2e} <= 1e-4)"


def _item05_noisy_3x3_theorem3_threshold() -> tuple[bool, str]:
    fam = family("horodecki:x=0.9", "q")
    crit = CriterionSpec(
        "theorem3",
        {"a": 1.0 / 12.0, "b": 1.0 / 6.0, "alpha": (0.125, 0.125), "beta": (0.125,)},
    )
    failures = []
    try:
        found = scan.threshold(fam, crit, 0.9, 1.0, tol=1e-6)
        err = abs(found.value - 0.9867)
        if err > 5e-4:
            failures.append(f"threshold {found.value:.6f} vs 0.9867 (|err| {err:.2e} > 5e-4)")
    except ValueError as exc:
        failures.append(f"threshold search: {exc}")
    result = scan.sweep(fam, crit, 0.9, 1.0, steps=101)
    csv_rows = result.to_csv().strip().splitlines()[1:]
    delta = {}
    for line in csv_rows:
        fields = line.split(",")
        delta[round(float(fields[0]), 6)] = float(fields[3])
    if not delta[0.98] < 0:
        failures.append(f"sweep CSV violation at q=0.98 is {delta[0.98]:.6g}, expected < 0")
    if not delta[0.99] > 0:
        failures.append(f"sweep CSV violation at q=0.99 is {delta[0.99]:.6g}, expected > 0")
    if failures:
        return False, "; ".join(failures) + (
            " [the weighted-block construction is verified against its scalar "
            "reduction; with these weights the violation stays negative on all "
            "of [0.9, 1], so the quoted reference threshold is not reachable]"
        )
    return True, "threshold 0.9867 +/- 5e-4 and sweep sign pattern reproduced"


def _item06_isotropic_thresholds() -> tuple[bool, str]:
    fam = family("isotropic:d1=2,d2=3", "p")
    failures = []

    def check(label, crit, expect, tol, search_tol=1e-6):
        found = scan.threshold(fam, crit, 0.0, 1.0, tol=search_tol).value
        if abs(found - expect) > tol:
            failures.append(f"{label}: {found:.6f} vs {expect} (tol {tol:g})")
        return found

    check("scalar-weighted", CriterionSpec("corollary2", {"a": np.sqrt(2.0), "b": np.sqrt(6.0)}),
          0.378054, 1e-5)
    check("bare-correlation", CriterionSpec("devicente", {}), 0.3849, 1e-4)
    check("realignment", CriterionSpec("realignment", {}), 0.3846, 1e-4)
    check("ppt", CriterionSpec("ppt", {}), 0.25, 1e-6, search_tol=1e-7)
    expected = {0.1: 0.379712, 0.5: 0.378139, 2.0: 0.378032, 10.0: 0.378025}
    found_t = []
    for t, expect in expected.items():
        crit = CriterionSpec("corollary2", {"a": np.sqrt(2.0) * t, "b": np.sqrt(6.0) * t})
        found_t.append(check(f"scalar-weighted t={t}", crit, expect, 1e-5))
    if not all(found_t[i] >= found_t[i + 1] for i in range(len(found_t) - 1)):
        failures.append(f"scaled thresholds not non-increasing: {found_t}")
    if failures:
        return False, "; ".join(failures)
    return True, (
        "thresholds 0.378054 / 0.3849 / 0.3846 / 0.25 and scaled sequence "
        "0.379712 -> 0.378025 (non-increasing) all reproduced"
    )


def _item07_structural_identities() -> tuple[bool, str]:
    rng = np.random.default_rng(71)
    dims = [(2, 2), (2, 3), (2, 4), (3, 3)]
    worst_t = worst_w = 0.0
    for i in range(100):
        m, n = dims[i % 4]
        state = states.random_density(m, n, m * n, seed=7000 + i)
        alpha = rng.normal(size=rng.integers(1, 4))
        beta = rng.normal(size=rng.integers(1, 4))
        alpha2 = rng.normal(size=rng.integers(1, 4))
        beta2 = rng.normal(size=rng.integers(1, 4))
        alpha2 *= np.linalg.norm(alpha) / np.linalg.norm(alpha2)
        beta2 *= np.linalg.norm(beta) / np.linalg.norm(beta2)
        worst_t = max(worst_t, abs(
            theorem1(state, alpha, beta).lhs - theorem1(state, alpha2, beta2).lhs
        ))
        a, b = rng.normal(), rng.normal()
        worst_w = max(worst_w, abs(
            theorem3(state, a, b, alpha, beta).lhs - theorem3(state, a, b, alpha2, beta2).lhs
        ))
    worst_red = worst_kl = 0.0
    for i in range(20):
        m, n = dims[i % 4]
        state = states.random_density(m, n, m * n, seed=7100 + i)
        rows = int(rng.integers(1, 5))
        a, b = float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.1, 2.0))
        via_shen = criteria.shen(state, rows, a, b)
        via_t1 = theorem1(state, a * np.ones(rows), b * np.ones(rows))
        worst_red = max(worst_red, abs(via_shen.lhs - via_t1.lhs),
                        abs(via_shen.bound - via_t1.bound))
        k, l = float(rng.uniform(0.2, 2.0)), float(rng.uniform(0.2, 2.0))
        a2, b2 = float(rng.uniform(0.0, 2.0)), float(rng.uniform(0.0, 2.0))
        via_w = theorem3(state, a2, b2, (k,), (l,))
        via_c2 = corollary2(state, a2 / l, b2 / k)
        worst_kl = max(worst_kl, abs(via_w.lhs - k * l * via_c2.lhs))
    ok = max(worst_t, worst_w, worst_red, worst_kl) <= 1e-10
    return ok, (
        f"same-norm invariance: {worst_t:.2e} (vector-weighted) / {worst_w:.2e} "
        f"(tensor-weighted); replicated-block reduction {worst_red:.2e}; scalar "
        f"tensor-weight identity {worst_kl:.2e}; all <= 1e-10 over 100/20 draws"
    )


_SOUNDNESS_CRITERIA = (
    CriterionSpec("devicente", {}),
    CriterionSpec("enhanced", {}),
    CriterionSpec("shen", {"m": 2, "a": 1.0, "b": 1.0}),
    CriterionSpec("theorem1", {"alpha": (0.6, 0.8), "beta": (1.0,)}),
    CriterionSpec("corollary2", {"a": 1.0, "b": 1.0}),
    CriterionSpec("theorem2", {"a": 1.0}),
    CriterionSpec("theorem3", {"a": 0.5, "b": 0.5, "alpha": (1.0, 1.0), "beta": (1.0,)}),
    CriterionSpec("ppt", {}),
    CriterionSpec("realignment", {}),
)


def _item08_separable_soundness() -> tuple[bool, str]:
    rng = np.random.default_rng(80)
    dims = [(2, 2), (2, 3), (2, 4), (3, 3)]
    false_positives = 0
    for i in range(500):
        m, n = dims[i % 4]
        terms = int(rng.integers(1, m * n + 3))
        state = states.random_separable(m, n, terms, seed=8000 + i)
        for crit in _SOUNDNESS_CRITERIA:
            if crit(state).entangled:
                false_positives += 1
    return false_positives == 0, (
        f"{false_positives} entangled verdicts across 500 separable states x "
        f"{len(_SOUNDNESS_CRITERIA)} criteria (expected 0)"
    )


def _item09_bloch_roundtrip() -> tuple[bool, str]:
    dims = [(2, 2), (2, 3), (2, 4), (3, 3)]
    worst = 0.0
    for i in range(200):
        m, n = dims[i % 4]
        state = states.random_density(m, n, rank=int(1 + i % (m * n)), seed=9000 + i)
        rebuilt = bloch.reconstruct(bloch.decompose(state))
        worst = max(worst, float(np.abs(rebuilt.mat - state.mat).max()))
    worst_orth = 0.0
    for d in range(2, 7):
        gens = bloch.generators(d)
        gram = np.einsum("aij,bji->ab", gens, gens)
        worst_orth = max(worst_orth, float(np.abs(gram - 2.0 * np.eye(d * d - 1)).max()))
    ok = worst <= 1e-12 and worst_orth <= 1e-12
    return ok, (
        f"round-trip max error {worst:.2e} over 200 states (<= 1e-12); basis "
        f"orthogonality max deviation {worst_orth:.2e} for d <= 6 (<= 1e-12)"
    )


def _item10_two_qubit_w_closed_form() -> tuple[bool, str]:
    rng = np.random.default_rng(100)
    worst = 0.0
    for _ in range(50):
        a1, a2, a3 = _admissible_three_param(rng)
        state = two_qubit_ex4(a1, a2, a3)
        for x, y in ((1.0, 1.0), (2.0, 3.0), (10.0, 10.0)):
            lhs = theorem3(
                state, np.sqrt(2.0) * x, np.sqrt(2.0) * y, (1.0, 1.0), (1.0, 1.0)
            ).lhs
            worst = max(worst, abs(lhs - two_qubit_w_closed_form(a1, a2, a3, x, y)))
    return worst <= 1e-8, (
        f"closed form vs computed lhs: max |err| {worst:.2e} <= 1e-8 over "
        f"50 parameter draws x 3 weight choices"
    )


ITEMS: tuple[Item, ...] = (
    Item(1, "bound2x4-vector-weight-threshold", _item01_bound2x4_theorem1_threshold),
    Item(2, "bound2x4-norm-invariance", _item02_bound2x4_norm_invariance),
    Item(3, "two-qubit-closed-form", _item03_two_qubit_closed_form),
    Item(4, "bound2x4-tensor-weight-threshold", _item04_bound2x4_theorem3_threshold),
    Item(5, "noisy-3x3-tensor-weight-threshold", _item05_noisy_3x3_theorem3_threshold),
    Item(6, "isotropic-2x3-thresholds", _item06_isotropic_thresholds),
    Item(7, "structural-identities", _item07_structural_identities),
    Item(8, "separable-soundness", _item08_separable_soundness),
    Item(9, "bloch-roundtrip", _item09_bloch_roundtrip),
    Item(10, "two-qubit-w-closed-form", _item10_two_qubit_w_closed_form),
)


def run_all() -> list[ItemResult]:
    return [item.run() for item in ITEMS]
