"""Accuracy-rejection curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from ..errors import EmptyInput, LengthMismatch

#: accuracy reported when every instance has been rejected
EMPTY_REMAINDER_ACCURACY = 1.0
# guards ceil() against products like 0.15 * 2000 = 300.00000000000006
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class ARCurve:
    rejection_rates: np.ndarray
    accuracies: np.ndarray
    auc: float


def rejection_grid(grid_max: float = 0.9, grid_step: float = 0.05) -> np.ndarray:
    """Rates ``0, step, 2 step, ...`` up to and including ``grid_max``, all below 1."""
    if not 0.0 <= grid_max < 1.0:
        raise ValueError(f"grid_max must lie in [0, 1), got {grid_max}")
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    count = int(math.floor(grid_max / grid_step + 1e-9)) + 1
    return np.round(np.arange(count) * grid_step, 12)


def n_rejected(rate: float, n: int) -> int:
    return min(n, int(math.ceil(rate * n - _CEIL_SLACK)))


def accuracy_rejection_curve(correctness, scores, grid) -> ARCurve:
    """Accuracy on the retained instances as the most uncertain are rejected.

    At rate ``p`` the ``ceil(p n)`` highest scores are rejected; equal scores
    are rejected in instance order (earlier first).  If nothing is left the
    accuracy is :data:`EMPTY_REMAINDER_ACCURACY`.  The AUC is the trapezoid
    integral over the grid divided by the grid span (the first accuracy for a
    single-point grid).
    """
    correct = np.asarray(correctness, dtype=float)
    s = np.asarray(scores, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if correct.shape != s.shape:
        raise LengthMismatch(f"{correct.size} correctness flags vs {s.size} scores")
    n = correct.size
    if n == 0:
        raise EmptyInput("no instances to build a curve from")
    if grid.size == 0 or np.any(grid < 0) or np.any(grid >= 1) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing within [0, 1)")
    # most uncertain first, earlier instance first among ties
    order = np.lexsort((np.arange(n), -s))
    kept_correct = correct[order][::-1].cumsum()[::-1]  # correct count among order[r:]
    accs = np.empty(grid.size)
    for j, p in enumerate(grid):
        r = n_rejected(float(p), n)
        accs[j] = EMPTY_REMAINDER_ACCURACY if r >= n else kept_correct[r] / (n - r)
    if grid.size == 1:
        auc = float(accs[0])
    else:
        auc = float(trapezoid(accs, grid) / (grid[-1] - grid[0]))
    return ARCurve(grid.copy(), accs, auc)
