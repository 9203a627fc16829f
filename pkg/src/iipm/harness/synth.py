"""Seeded synthetic ensembles standing in for real predictor outputs.

Each instance gets a difficulty ``u`` in [0, 1].  Difficulty flattens the
instance's base class distribution (so the sampled true label is more often
missed) and loosens the spread of the ``m`` predictors around that base (so
the ensemble disagrees).  Epistemic spread and error probability therefore
rise together by construction.
"""

from __future__ import annotations

import numpy as np

from .data import InstanceRecord, PredictionTable

PROFILES = {
    "mixed": (0.0, 1.0),
    "easy-only": (0.0, 0.1),
    "hard-only": (0.9, 1.0),
}

_BASE_ALPHA = 0.5
_PEAK = 20.0
# predictor concentration runs from 10**4 (easy) down to 10**0.5 (hard)
_LOG_KAPPA_EASY = 4.0
_LOG_KAPPA_HARD = 0.5
_ALPHA_FLOOR = 1e-2


def synth_generate(seed: int, n: int, K: int, m: int, profile: str = "mixed") -> PredictionTable:
    """Draw a reproducible ``n``-instance table with ``m`` predictors over ``K`` classes.

    ``n = 0`` gives an empty table; the curve stage rejects it later.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    if n < 0 or K < 1 or m < 1:
        raise ValueError(f"need n >= 0, K >= 1, m >= 1 (got n={n}, K={K}, m={m})")
    lo, hi = PROFILES[profile]
    rng = np.random.default_rng(seed)
    width = max(5, len(str(max(n - 1, 0))))
    table = PredictionTable(
        K=K,
        class_labels=[str(k) for k in range(K)],
        predictor_ids=[f"m{j}" for j in range(m)],
    )
    for i in range(n):
        u = rng.uniform(lo, hi)
        alpha = np.full(K, _BASE_ALPHA)
        alpha[rng.integers(K)] += _PEAK * (1.0 - u)
        base = rng.dirichlet(alpha)
        label = int(rng.choice(K, p=base))
        kappa = 10.0 ** (_LOG_KAPPA_EASY + (_LOG_KAPPA_HARD - _LOG_KAPPA_EASY) * u)
        probs = rng.dirichlet(kappa * base + _ALPHA_FLOOR, size=m)
        probs /= probs.sum(axis=1, keepdims=True)
        probs.setflags(write=False)
        table.instances.append(InstanceRecord(f"i{i:0{width}d}", label, probs))
    return table
