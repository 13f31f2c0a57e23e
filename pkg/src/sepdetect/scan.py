"""Parameter sweeps and detection-threshold searches over a state family
crossed with a criterion.

The threshold search brackets the sign change of the violation with plain
bisection: the violation is continuous in the mixing parameter but need not
be smooth across singular-value crossings, so derivative-based root finders
buy nothing here.  Non-monotone families are the caller's responsibility;
the search only guarantees a sign change inside the returned bracket.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .criteria import Verdict
from .states import DensityMatrix, StateFamily

__all__ = ["ScanRow", "ScanResult", "Threshold", "sweep", "threshold", "CSV_HEADER"]

CSV_HEADER = "param,lhs,bound,violation,entangled"

DEFAULT_TOL = 1e-6
MAX_BISECTIONS = 60


def _criterion_label(criterion) -> str:
    if hasattr(criterion, "name"):
        return str(criterion)
    return getattr(criterion, "__name__", repr(criterion))


@dataclass(frozen=True)
class ScanRow:
    param: float
    lhs: float
    bound: float
    violation: float
    entangled: bool


@dataclass(frozen=True, eq=False)
class ScanResult:
    family: str
    criterion: str
    param: str
    rows: tuple[ScanRow, ...]

    def to_csv(self) -> str:
        """Render rows as CSV with 12-significant-digit floats and a 0/1
        entangled flag."""
        lines = [CSV_HEADER]
        for row in self.rows:
            lines.append(
                f"{row.param:.12g},{row.lhs:.12g},{row.bound:.12g},"
                f"{row.violation:.12g},{int(row.entangled)}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Threshold:
    """Detection threshold located by bisection.

    ``direction`` is ``"detects-above"`` when the violating endpoint is the
    upper one, else ``"detects-below"``.  The violation changes sign inside
    ``[value - tolerance, value + tolerance]``.
    """

    family: str
    criterion: str
    value: float
    tolerance: float
    direction: str


def _evaluate(family: StateFamily, criterion: Callable[[DensityMatrix], Verdict],
              value: float) -> Verdict:
    return criterion(family.at(value))


def sweep(family: StateFamily, criterion: Callable[[DensityMatrix], Verdict],
          start: float, stop: float, steps: int, workers: int = 1) -> ScanResult:
    """Evaluate the criterion on a uniform inclusive grid.

    Grid points are independent; with ``workers > 1`` they are evaluated by a
    thread pool and merged back in index order, so output is deterministic
    regardless of scheduling.
    """
    if not start < stop:
        raise ValueError(f"need start < stop, got [{start:.12g}, {stop:.12g}]")
    if steps < 2:
        raise ValueError(f"need at least 2 grid points, got {steps}")
    grid = np.linspace(start, stop, steps)

    def one(value: float) -> ScanRow:
        verdict = _evaluate(family, criterion, value)
        return ScanRow(
            param=float(value),
            lhs=verdict.lhs,
            bound=verdict.bound,
            violation=verdict.violation,
            entangled=verdict.entangled,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(one, grid))
    else:
        rows = tuple(one(v) for v in grid)
    return ScanResult(
        family=family.label,
        criterion=_criterion_label(criterion),
        param=family.param,
        rows=rows,
    )


def threshold(family: StateFamily, criterion: Callable[[DensityMatrix], Verdict],
              start: float, stop: float, tol: float = DEFAULT_TOL,
              max_iter: int = MAX_BISECTIONS) -> Threshold:
    """Bisect the sign change of the violation on ``[start, stop]``.

    The endpoints must have strictly opposite violation signs, otherwise a
    ``ValueError`` reports that no threshold is bracketed.  Bisection stops
    when the bracket is narrower than ``tol`` (or after ``max_iter`` splits)
    and returns the bracket midpoint.
    """
    if not start < stop:
        raise ValueError(f"need start < stop, got [{start:.12g}, {stop:.12g}]")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol:.12g}")
    v_lo = _evaluate(family, criterion, start).violation
    v_hi = _evaluate(family, criterion, stop).violation
    if v_lo == 0.0 or v_hi == 0.0 or (v_lo < 0.0) == (v_hi < 0.0):
        raise ValueError(
            f"no threshold in [{start:.12g}, {stop:.12g}]: violation goes "
            f"{v_lo:.6g} -> {v_hi:.6g} without a sign change"
        )
    direction = "detects-above" if v_hi > 0.0 else "detects-below"
    lo, hi = float(start), float(stop)
    for _ in range(max_iter):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        v_mid = _evaluate(family, criterion, mid).violation
        if (v_mid < 0.0) == (v_lo < 0.0):
            lo, v_lo = mid, v_mid
        else:
            hi, v_hi = mid, v_mid
    return Threshold(
        family=family.label,
        criterion=_criterion_label(criterion),
        value=0.5 * (lo + hi),
        tolerance=tol,
        direction=direction,
    )
