"""Integral imprecise probability metrics over explicit function families.

Suprema are always taken over finite families: the full indicator family
(lower total variation), the sign-pattern family of 1-Lipschitz functions on
a sorted set of points, or any user-supplied list.  Kernel-ball suprema are
handled through the closed form of contaminated mean embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .capacity import (
    INPUT_TOL,
    MAX_LATTICE_K,
    Capacity,
    ContaminationModel,
    FiniteSpace,
    _same_space,
    check_lattice_size,
    epsilon_contamination,
)
from .choquet import BoundedFunction, choquet_batch
from .errors import (
    BadRate,
    DimMismatch,
    EmptyFamily,
    NotNormalized,
    PointsNotSorted,
    SpaceMismatch,
    TooFewSamples,
)


class Sup(NamedTuple):
    """A supremum value with the member (subset bitmask or family index) attaining it."""

    value: float
    argmax: int


@dataclass(frozen=True, eq=False)
class FunctionFamily:
    """Finite family of functions on one space, stored row-wise."""

    space: FiniteSpace
    members: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.members, dtype=float)
        if M.size == 0:
            raise EmptyFamily("a function family needs at least one member")
        M = np.atleast_2d(M)
        if M.shape[1] != self.space.K:
            raise SpaceMismatch(f"members have {M.shape[1]} values, space has {self.space.K}")
        M.setflags(write=False)
        object.__setattr__(self, "members", M)

    @classmethod
    def from_functions(cls, functions: Sequence[BoundedFunction]) -> "FunctionFamily":
        if not functions:
            raise EmptyFamily("a function family needs at least one member")
        space = functions[0].space
        for f in functions[1:]:
            if f.space != space:
                raise SpaceMismatch("all members must share one space")
        return cls(space, np.stack([f.values for f in functions]))

    def __len__(self):
        return self.members.shape[0]

    def __getitem__(self, j) -> BoundedFunction:
        return BoundedFunction(self.space, self.members[j])


def indicator_family(space: FiniteSpace, max_k: int = MAX_LATTICE_K) -> FunctionFamily:
    """Indicators of all ``2**K`` subsets; member ``j`` is the indicator of bitmask ``j``."""
    check_lattice_size(space.K, max_k)
    masks = np.arange(1 << space.K)
    return FunctionFamily(space, (masks[:, None] >> np.arange(space.K)) & 1)


# ---------------------------------------------------------------------------
# set-function distances


def ltv(P: Capacity, Q: Capacity, max_k: int = MAX_LATTICE_K) -> Sup:
    """Lower total variation: ``max_A |P(A) - Q(A)|`` with a maximizing subset."""
    _same_space(P, Q)
    check_lattice_size(P.K, max_k)
    diff = np.abs(P.values - Q.values)
    j = int(np.argmax(diff))
    return Sup(float(diff[j]), j)


def singleton_l1(P: Capacity, Q: Capacity) -> float:
    _same_space(P, Q)
    return float(np.abs(P.singletons() - Q.singletons()).sum())


def iipm_bruteforce(F: FunctionFamily, nu: Capacity, mu: Capacity) -> Sup:
    """``max_{f in F} |∮ f dν - ∮ f dμ|`` and the index of a maximizing member."""
    space = _same_space(nu, mu)
    if F.space != space:
        raise SpaceMismatch(f"family on {F.space.labels}, capacities on {space.labels}")
    diff = np.abs(choquet_batch(F.members, nu.values) - choquet_batch(F.members, mu.values))
    j = int(np.argmax(diff))
    return Sup(float(diff[j]), j)


# ---------------------------------------------------------------------------
# 1D Lipschitz family and the Kantorovich identity


def _sorted_points(points) -> np.ndarray:
    x = np.asarray(points, dtype=float).ravel()
    if x.size == 0:
        raise PointsNotSorted("need at least one point")
    if np.any(np.diff(x) <= 0):
        raise PointsNotSorted(f"points must be strictly increasing: {x.tolist()}")
    return x


def lipschitz_family_1d(points, space: FiniteSpace | None = None, max_k: int = MAX_LATTICE_K) -> FunctionFamily:
    """All ``2**(K-1)`` functions pinned at ``f(x_0) = 0`` whose increments are ``±`` the gaps.

    Bit ``j`` of the member index flips the sign of gap ``j``, so member 0 is
    ``f(x) = x - x_0``.  Each member is 1-Lipschitz on the line and the family
    contains a maximizer of ``|E_p f - E_q f|`` over all 1-Lipschitz ``f``
    for any pair of distributions on the points.
    """
    x = _sorted_points(points)
    K = x.shape[0]
    check_lattice_size(K, max_k)
    space = space or FiniteSpace.of_size(K)
    if space.K != K:
        raise SpaceMismatch(f"{K} points on a space of size {space.K}")
    gaps = np.diff(x)
    patterns = np.arange(1 << (K - 1))
    signs = 1.0 - 2.0 * ((patterns[:, None] >> np.arange(K - 1)) & 1)
    steps = signs * gaps
    members = np.concatenate([np.zeros((patterns.size, 1)), np.cumsum(steps, axis=1)], axis=1)
    return FunctionFamily(space, members)


def wasserstein1_line(p, q, points) -> float:
    """``W_1`` on the real line via CDF differences: ``sum_i |F_p(i) - F_q(i)| (x_{i+1} - x_i)``."""
    x = _sorted_points(points)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    for name, v in (("p", p), ("q", q)):
        if v.shape != x.shape or np.any(v < -INPUT_TOL) or abs(v.sum() - 1.0) > INPUT_TOL:
            raise NotNormalized(f"{name} is not a probability vector on {x.size} points")
    cdf_gap = np.abs(np.cumsum(p - q))[:-1]
    return float(cdf_gap @ np.diff(x))


class KantorovichCheck(NamedTuple):
    iipm_value: float
    identity_value: float


def contaminated_kantorovich_check(P, Q, points, epsilon: float) -> KantorovichCheck:
    """Both sides of the contaminated Kantorovich identity.

    Left: brute-force IIPM over the 1D Lipschitz family between the two
    ``epsilon``-contaminated lower probabilities.  Right:
    ``(1 - epsilon) W_1(P, Q)`` from the CDF formula.
    """
    x = _sorted_points(points)
    space = FiniteSpace.of_size(x.size)
    Pe = epsilon_contamination(ContaminationModel(space, P, epsilon))
    Qe = epsilon_contamination(ContaminationModel(space, Q, epsilon))
    left = iipm_bruteforce(lipschitz_family_1d(x, space), Pe, Qe).value
    right = (1.0 - float(epsilon)) * wasserstein1_line(P, Q, x)
    return KantorovichCheck(left, right)


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice for the kernel IIPM.

    Only ``"gaussian"`` is built in.  A replacement kernel must be symmetric
    and positive semi-definite; override :meth:`gram` to plug one in.
    """

    bandwidth: float
    kind: str = "gaussian"

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.kind != "gaussian":
            raise ValueError(f"unknown kernel kind {self.kind!r}")

    def gram(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        sq = cdist(X, Y, "sqeuclidean")
        return np.exp(-sq / (2.0 * self.bandwidth**2))


def _as_points(x) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    return a[:, None] if a.ndim == 1 else a


def gaussian_kernel(x, y, spec: KernelSpec) -> float:
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise DimMismatch(f"dimension {x.size} vs {y.size}")
    d = x - y
    return float(np.exp(-(d @ d) / (2.0 * spec.bandwidth**2)))


@dataclass(frozen=True, eq=False)
class SampleSet:
    """``n >= 2`` points in ``R^d``, one per row."""

    points: np.ndarray

    def __post_init__(self):
        pts = _as_points(self.points)
        if pts.ndim != 2:
            raise DimMismatch(f"samples must be a 2D array, got shape {pts.shape}")
        if pts.shape[0] < 2:
            raise TooFewSamples(f"need at least 2 samples, got {pts.shape[0]}")
        pts = np.array(pts, copy=True)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def median_heuristic(X, Z) -> float:
    """Median pairwise distance of the pooled sample, a common bandwidth default."""
    pts = np.vstack([_as_points(getattr(X, "points", X)), _as_points(getattr(Z, "points", Z))])
    dists = pdist(pts)
    med = float(np.median(dists)) if dists.size else 0.0
    return med if med > 0 else 1.0


def _offdiag_mean(G: np.ndarray) -> float:
    n = G.shape[0]
    return float((G.sum() - np.trace(G)) / (n * (n - 1)))


def contaminated_mmd_sq(X, Z, epsilon: float, delta: float, spec: KernelSpec) -> float:
    """Unbiased estimate of ``||(1 - eps) mu_P - (1 - delta) mu_Q||_k^2``.

    ``X`` are draws from ``P`` and ``Z`` from ``Q``.  The within-sample terms
    skip the diagonal, so the estimate can be negative; it is returned as is.
    With ``eps = delta = 0`` this is the usual unbiased MMD^2.
    """
    X = X if isinstance(X, SampleSet) else SampleSet(X)
    Z = Z if isinstance(Z, SampleSet) else SampleSet(Z)
    if X.d != Z.d:
        raise DimMismatch(f"sample dimensions differ: {X.d} vs {Z.d}")
    for name, r in (("epsilon", epsilon), ("delta", delta)):
        if not 0.0 <= r <= 1.0:
            raise BadRate(f"{name}={r} outside [0, 1]")
    a, b = 1.0 - epsilon, 1.0 - delta
    kxx = _offdiag_mean(spec.gram(X.points, X.points))
    kzz = _offdiag_mean(spec.gram(Z.points, Z.points))
    kxz = float(spec.gram(X.points, Z.points).mean())
    return a * a * kxx - 2.0 * a * b * kxz + b * b * kzz


__all__ = [
    "Sup",
    "FunctionFamily",
    "indicator_family",
    "ltv",
    "singleton_l1",
    "iipm_bruteforce",
    "lipschitz_family_1d",
    "wasserstein1_line",
    "KantorovichCheck",
    "contaminated_kantorovich_check",
    "KernelSpec",
    "SampleSet",
    "gaussian_kernel",
    "median_heuristic",
    "contaminated_mmd_sq",
]
