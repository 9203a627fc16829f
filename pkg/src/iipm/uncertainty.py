"""Epistemic uncertainty of lower probabilities.

Measures are in [0, 1] for the imprecision family (exact over all events,
or the linear-time bound from singleton values) and in bits for the
Hartley- and entropy-based baselines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .capacity import (
    INPUT_TOL,
    MAX_LATTICE_K,
    Capacity,
    CredalSet,
    _check_probability,
    capacity_from_credal,
    check_lattice_size,
    conjugate,
    mobius_inverse,
    popcounts,
)
from .choquet import choquet_batch
from .errors import SpaceMismatch
from .metrics import FunctionFamily, Sup

LN2 = math.log(2.0)

#: CLI / report names mapped to :class:`UncertaintyScores` attributes.
MEASURES = {"mmi": "mmi_tv", "mmi-lin": "mmi_lin", "gh": "gh", "ediff": "e_diff"}
EXACT_MEASURES = ("mmi", "gh")


def mmi_tv(lower: Capacity, max_k: int = MAX_LATTICE_K) -> Sup:
    """Largest gap ``upper(A) - lower(A)`` over all events.

    Ties go to the smallest bitmask; which maximizer is reported is otherwise
    arbitrary.
    """
    check_lattice_size(lower.K, max_k)
    gap = conjugate(lower).values - lower.values
    j = int(np.argmax(gap))
    return Sup(max(float(gap[j]), 0.0), j)


def mmi_lin(lower) -> float:
    """``1 - sum_x lower({x})``; accepts a capacity or the singleton vector itself."""
    single = lower.singletons() if isinstance(lower, Capacity) else np.asarray(lower, dtype=float)
    return max(1.0 - float(single.sum()), 0.0)


def mmi_family(F: FunctionFamily, lower: Capacity) -> Sup:
    """``max_f ∮ f d(upper) - ∮ f d(lower)`` over an explicit family."""
    if F.space != lower.space:
        raise SpaceMismatch(f"family on {F.space.labels}, capacity on {lower.space.labels}")
    upper = conjugate(lower)
    gap = choquet_batch(F.members, upper.values) - choquet_batch(F.members, lower.values)
    j = int(np.argmax(gap))
    return Sup(float(gap[j]), j)


def gh_measure(lower: Capacity, max_k: int = MAX_LATTICE_K) -> float:
    """Generalised Hartley nonspecificity ``sum_A m(A) log2 |A|`` in bits."""
    check_lattice_size(lower.K, max_k)
    m = mobius_inverse(lower, max_k).mass
    sizes = popcounts(lower.K)
    logs = np.zeros(sizes.shape)
    logs[1:] = np.log2(sizes[1:])
    return float(m @ logs)


def shannon_entropy(p) -> float:
    """Entropy in bits, with ``0 log 0 = 0``."""
    p = _check_probability(p, tol=INPUT_TOL, what="distribution")
    nz = p[p > 0]
    return max(float(-(nz * np.log2(nz)).sum()), 0.0) + 0.0


# ---------------------------------------------------------------------------
# entropy maximization over a generator hull


class HullMaxEntropy(NamedTuple):
    value: float  # bits, entropy of a feasible mixture (a lower bound on the max)
    gap: float  # Frank-Wolfe duality gap in bits; value + gap bounds the max from above
    weights: np.ndarray
    iterations: int


def _entropy_nats(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def _line_search(p: np.ndarray, d: np.ndarray, gmax: float) -> float:
    """Maximize ``H(p + g d)`` over ``g in [0, gmax]`` (``sum(d) == 0``, H concave)."""
    active = d != 0
    p, d = p[active], d[active]

    def slope(g):
        q = p + g * d
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(q > 0, d * np.log(np.where(q > 0, q, 1.0)), np.where(d < 0, np.inf, -np.inf))
        return -float(terms.sum())

    if slope(gmax) >= 0:
        return gmax
    lo, hi = 0.0, gmax
    g = 0.5 * gmax
    for _ in range(100):
        s = slope(g)
        if s == 0.0:
            return g
        if s > 0:
            lo = g
        else:
            hi = g
        q = p + g * d
        curv = float((d * d / np.where(q > 0, q, np.inf)).sum())
        step = g + s / curv if curv > 0 else 0.5 * (lo + hi)
        if abs(step - g) <= 1e-15 * max(g, 1e-300):
            return step
        # Newton inside the bracket, bisection otherwise
        g = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 1e-15 * gmax:
            break
    return g


def max_entropy_hull(generators, tol: float = 1e-8, max_iter: int = 1000) -> HullMaxEntropy:
    """Frank-Wolfe ascent of entropy over mixtures of the generators.

    Starts at uniform weights and uses pairwise steps (weight moves from the
    worst active generator to the Frank-Wolfe vertex) with an exact line
    search.  Stops once the Frank-Wolfe gap drops below ``tol`` bits or after
    ``max_iter`` iterations.
    """
    G = np.atleast_2d(np.asarray(generators, dtype=float))
    m = G.shape[0]
    w = np.full(m, 1.0 / m)
    p = w @ G
    gap_bits = 0.0
    it = 0
    for it in range(1, max_iter + 1):
        with np.errstate(divide="ignore"):
            logp = np.where(p > 0, np.log(np.where(p > 0, p, 1.0)), -700.0)
        grad = G @ (-(logp + 1.0))
        s = int(np.argmax(grad))
        gap_bits = float(grad[s] - grad @ w) / LN2
        if gap_bits < tol:
            break
        active = np.flatnonzero(w > 0)
        a = int(active[np.argmin(grad[active])])
        if a == s:
            break
        d = G[s] - G[a]
        g = _line_search(p, d, float(w[a]))
        if g <= 0.0:
            break
        w[s] += g
        w[a] -= g
        if w[a] < 1e-15:
            w[s] += w[a]
            w[a] = 0.0
        p = np.clip(w @ G, 0.0, None)
    return HullMaxEntropy(_entropy_nats(p) / LN2, max(gap_bits, 0.0), w, it)


class EntropyDifference(NamedTuple):
    value: float
    max_entropy: float
    min_entropy: float
    gap: float


def entropy_difference(C: CredalSet | np.ndarray, tol: float = 1e-8, max_iter: int = 1000) -> EntropyDifference:
    """Max minus min Shannon entropy over the convex hull of the generators.

    The minimum of a concave function over a polytope sits at a vertex, so it
    is the minimum over generators.  The maximum comes from
    :func:`max_entropy_hull`; ``gap`` is its certificate.
    """
    G = C.generators if isinstance(C, CredalSet) else np.atleast_2d(np.asarray(C, dtype=float))
    ents = [shannon_entropy(g) for g in G]
    h_min = min(ents)
    if G.shape[0] == 1:
        return EntropyDifference(0.0, h_min, h_min, 0.0)
    fw = max_entropy_hull(G, tol=tol, max_iter=max_iter)
    h_max = max(fw.value, max(ents))
    return EntropyDifference(h_max - h_min, h_max, h_min, fw.gap)


# ---------------------------------------------------------------------------
# per-credal-set scoring


@dataclass(frozen=True)
class UncertaintyScores:
    """Scores of one credal set; exact measures are ``None`` when skipped."""

    mmi_lin: float | None = None
    e_diff: float | None = None
    mmi_tv: float | None = None
    gh: float | None = None
    skipped: tuple[str, ...] = ()

    def get(self, measure: str) -> float | None:
        return getattr(self, MEASURES[measure])


def uncertainty_scores(
    C: CredalSet,
    measures=tuple(MEASURES),
    max_k: int = MAX_LATTICE_K,
) -> UncertaintyScores:
    """Score one credal set on the requested measures.

    ``mmi`` and ``gh`` need the whole lattice; above ``max_k`` they are
    listed in ``skipped`` instead of computed.  ``mmi-lin`` only needs the
    singleton minima and ``ediff`` the generators, so they always run.
    """
    unknown = set(measures) - set(MEASURES)
    if unknown:
        raise ValueError(f"unknown measures {sorted(unknown)}")
    out: dict = {}
    skipped = []
    if "mmi-lin" in measures:
        out["mmi_lin"] = mmi_lin(C.generators.min(axis=0))
    if "ediff" in measures:
        out["e_diff"] = entropy_difference(C).value
    exact = [name for name in EXACT_MEASURES if name in measures]
    if exact:
        if C.space.K > max_k:
            skipped = exact
        else:
            lower = capacity_from_credal(C, max_k)
            if "mmi" in measures:
                out["mmi_tv"] = mmi_tv(lower, max_k).value
            if "gh" in measures:
                # Möbius sums leave ~1e-16 noise around 0 for precise inputs
                gh = gh_measure(lower, max_k)
                out["gh"] = 0.0 if abs(gh) < 1e-12 else gh
    return UncertaintyScores(**out, skipped=tuple(skipped))


__all__ = [
    "MEASURES",
    "mmi_tv",
    "mmi_lin",
    "mmi_family",
    "gh_measure",
    "shannon_entropy",
    "max_entropy_hull",
    "HullMaxEntropy",
    "entropy_difference",
    "EntropyDifference",
    "UncertaintyScores",
    "uncertainty_scores",
]
