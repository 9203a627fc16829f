"""Random generators and independent oracles shared by the test modules.

The oracles deliberately avoid the package's fast paths: Möbius sums are
done subset by subset, MMD with explicit double loops.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from iipm import Capacity, CredalSet, FiniteSpace, capacity_from_credal
from iipm.capacity import subset_sums

# Capacities on three outcomes that vanish on singletons and take one value on every pair.
PAIR_MASKS = (0b011, 0b101, 0b110)


def pair_valued_capacity(pair_value: float) -> Capacity:
    vals = np.zeros(8)
    vals[list(PAIR_MASKS)] = pair_value
    vals[7] = 1.0
    return Capacity(FiniteSpace.of_size(3), vals)


def random_credal(rng, K: int, m: int, concentration: float | None = None) -> CredalSet:
    alpha = concentration if concentration is not None else rng.uniform(0.2, 3.0)
    return CredalSet.from_rows(rng.dirichlet(np.full(K, alpha), size=m))


def random_lower(rng, K: int, m: int | None = None) -> Capacity:
    return capacity_from_credal(random_credal(rng, K, m if m is not None else int(rng.integers(1, 11))))


def random_capacity(rng, K: int) -> Capacity:
    """Generic capacity: random values closed upward under inclusion."""
    v = rng.uniform(size=1 << K)
    v[0] = 0.0
    for i in range(K):
        view = v.reshape(-1, 2, 1 << i)
        view[:, 1, :] = np.maximum(view[:, 1, :], view[:, 0, :])
    v /= v[-1]
    v[-1] = 1.0
    return Capacity(FiniteSpace.of_size(K), v)


def random_masses(rng, K: int, sparsity: float = 0.5) -> np.ndarray:
    m = rng.uniform(size=1 << K) * (rng.uniform(size=1 << K) < sparsity)
    m[0] = 0.0
    if m.sum() == 0:
        m[-1] = 1.0
    return m / m.sum()


def belief_capacity(masses: np.ndarray, K: int) -> Capacity:
    """``Bel(A) = sum_{B ⊆ A} m(B)`` by explicit subset enumeration."""
    vals = np.array([sum(masses[B] for B in range(1 << K) if B & A == B) for A in range(1 << K)])
    vals[-1] = 1.0
    return Capacity(FiniteSpace.of_size(K), vals)


def naive_mobius(values: np.ndarray, K: int) -> np.ndarray:
    """Alternating-sum Möbius inverse, O(3^K)."""
    out = np.zeros(1 << K)
    for A in range(1 << K):
        total = 0.0
        B = A
        while True:
            total += (-1) ** (bin(A).count("1") - bin(B).count("1")) * values[B]
            if B == 0:
                break
            B = (B - 1) & A
        out[A] = total
    return out


def naive_zeta(masses: np.ndarray, K: int) -> np.ndarray:
    out = np.zeros(1 << K)
    for A in range(1 << K):
        B = A
        while True:
            out[A] += masses[B]
            if B == 0:
                break
            B = (B - 1) & A
    return out


def permutation_vertices(nu: Capacity) -> np.ndarray:
    """Marginal vectors of ``nu`` along every ordering of the outcomes.

    For a 2-monotone capacity these are the extreme points of its core.
    """
    K = nu.K
    rows = []
    for perm in itertools.permutations(range(K)):
        p = np.zeros(K)
        mask = 0
        for i in perm:
            new = mask | (1 << i)
            p[i] = nu[new] - nu[mask]
            mask = new
        rows.append(p)
    return np.array(rows)


def belief_lower_expectation(f: np.ndarray, masses: np.ndarray, K: int) -> float:
    """``sum_A m(A) min_{x in A} f(x)``: each focal mass sits on its worst outcome."""
    return float(sum(masses[A] * min(f[i] for i in range(K) if A >> i & 1) for A in range(1, 1 << K)))


def textbook_mmd2_unbiased(X: np.ndarray, Z: np.ndarray, bandwidth: float) -> float:
    def k(a, b):
        return math.exp(-float(np.sum((a - b) ** 2)) / (2 * bandwidth**2))

    n, m = len(X), len(Z)
    xx = sum(k(X[i], X[j]) for i in range(n) for j in range(n) if i != j) / (n * (n - 1))
    zz = sum(k(Z[i], Z[j]) for i in range(m) for j in range(m) if i != j) / (m * (m - 1))
    xz = sum(k(X[i], Z[j]) for i in range(n) for j in range(m)) / (n * m)
    return xx + zz - 2 * xz


def additive_values(p) -> np.ndarray:
    return subset_sums(np.asarray(p, dtype=float))
