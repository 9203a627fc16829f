"""Capacities, lower probabilities and their Möbius representation on a finite space.

Every set function lives on the full subset lattice of a :class:`FiniteSpace`
as a dense array of ``2**K`` floats.  Subsets are encoded as bitmasks: bit ``i``
is set iff outcome ``i`` belongs to the subset, so ``0`` is the empty set and
``2**K - 1`` the whole space.

Objects are immutable once built; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    BadLength,
    NotDominated,
    NotMonotone,
    NotNormalized,
    NotNormalizedMass,
    SpaceMismatch,
    SpaceTooLarge,
)

#: Largest K for operations that sweep the ``2**K`` lattice.
MAX_LATTICE_K = 20
#: Largest K for operations that visit all ``4**K`` ordered subset pairs.
MAX_PAIR_K = 14

STRUCT_TOL = 1e-12
INPUT_TOL = 1e-9


# ---------------------------------------------------------------------------
# lattice helpers


def check_lattice_size(K: int, max_k: int = MAX_LATTICE_K) -> None:
    if K > max_k:
        raise SpaceTooLarge(f"K={K} exceeds the exact-computation guard ({max_k})")


def popcounts(K: int) -> np.ndarray:
    """Cardinality of every subset, indexed by bitmask."""
    pc = np.zeros(1 << K, dtype=np.int64)
    for i in range(K):
        pc[1 << i : 1 << (i + 1)] = pc[: 1 << i] + 1
    return pc


def subset_sums(vectors: np.ndarray) -> np.ndarray:
    """Sum of ``v[i]`` over ``i in A`` for every subset ``A``.

    Works on the last axis, so an ``(m, K)`` stack of vectors gives ``(m, 2**K)``.
    Each new entry is an old entry plus one component, which keeps the result
    exactly monotone for nonnegative inputs.
    """
    v = np.asarray(vectors, dtype=float)
    K = v.shape[-1]
    out = np.zeros(v.shape[:-1] + (1 << K,))
    for i in range(K):
        out[..., 1 << i : 1 << (i + 1)] = out[..., : 1 << i] + v[..., i : i + 1]
    return out


def _subset_transform(a: np.ndarray, K: int, sign: float) -> np.ndarray:
    # in-place butterfly over each bit: a[A | i] += sign * a[A] for A without i
    a = np.array(a, dtype=float, copy=True)
    for i in range(K):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] += sign * view[:, 0, :]
    return a


def zeta_transform(a: np.ndarray, K: int) -> np.ndarray:
    """``out[A] = sum_{B ⊆ A} a[B]`` in ``O(K 2**K)``."""
    return _subset_transform(a, K, 1.0)


def mobius_transform(a: np.ndarray, K: int) -> np.ndarray:
    """Inverse of :func:`zeta_transform`."""
    return _subset_transform(a, K, -1.0)


def complement_index(K: int) -> np.ndarray:
    full = (1 << K) - 1
    return full ^ np.arange(1 << K)


def first_monotonicity_violation(values: np.ndarray, K: int, tol: float = STRUCT_TOL):
    """Return the first covering pair ``(A, A ∪ {i})`` with ``v[A] > v[A ∪ {i}] + tol``.

    Only the ``K 2**(K-1)`` covering pairs are checked; monotonicity along
    them implies it along every inclusion.
    """
    idx = np.arange(1 << K)
    for i in range(K):
        lower = values.reshape(-1, 2, 1 << i)[:, 0, :].ravel()
        upper = values.reshape(-1, 2, 1 << i)[:, 1, :].ravel()
        bad = np.flatnonzero(lower > upper + tol)
        if bad.size:
            a = int(idx.reshape(-1, 2, 1 << i)[:, 0, :].ravel()[bad[0]])
            return a, a | (1 << i)
    return None


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class FiniteSpace:
    """Ordered, labelled outcome space ``{x_0, ..., x_{K-1}}``."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise BadLength("a finite space needs at least one outcome")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate outcome labels in {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, K: int) -> "FiniteSpace":
        return cls(tuple(f"x{i}" for i in range(K)))

    @property
    def K(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.K) - 1

    def index(self, item) -> int:
        if isinstance(item, (int, np.integer)):
            if not 0 <= item < self.K:
                raise IndexError(item)
            return int(item)
        return self.labels.index(str(item))

    def mask(self, items: Iterable) -> int:
        """Bitmask of a subset given by labels or integer indices."""
        bits = 0
        for item in items:
            bits |= 1 << self.index(item)
        return bits

    def members(self, mask: int) -> list[str]:
        return [lab for i, lab in enumerate(self.labels) if mask >> i & 1]


def _as_space(space: FiniteSpace | int) -> FiniteSpace:
    return FiniteSpace.of_size(space) if isinstance(space, (int, np.integer)) else space


def _same_space(*objs) -> FiniteSpace:
    space = objs[0].space
    for o in objs[1:]:
        if o.space != space:
            raise SpaceMismatch(f"{space.labels} vs {o.space.labels}")
    return space


@dataclass(frozen=True, eq=False)
class Capacity:
    """A set function stored over the whole subset lattice.

    Construction only checks the array length; use :func:`validate_capacity`
    to enforce normalization and monotonicity on untrusted data.  Values are
    read-only.
    """

    space: FiniteSpace
    values: np.ndarray
    # the capacity this one is the conjugate of, so that double conjugation
    # hands back the original object bit for bit
    _dual: "Capacity | None" = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1 or vals.shape[0] != 1 << self.space.K:
            raise BadLength(
                f"expected {1 << self.space.K} lattice values for K={self.space.K}, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def K(self) -> int:
        return self.space.K

    def __getitem__(self, mask) -> float:
        return float(self.values[mask])

    def __eq__(self, other):
        if not isinstance(other, Capacity):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]

    def singletons(self) -> np.ndarray:
        return self.values[1 << np.arange(self.K)]

    def is_additive(self, tol: float = STRUCT_TOL) -> bool:
        return bool(np.allclose(self.values, subset_sums(self.singletons()), rtol=0.0, atol=tol))

    def as_dict(self) -> dict:
        return {"labels": list(self.space.labels), "values": {str(i): float(v) for i, v in enumerate(self.values)}}


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Möbius masses over the subset lattice.  Masses may be negative."""

    space: FiniteSpace
    mass: np.ndarray

    def __post_init__(self):
        m = np.array(self.mass, dtype=float)
        if m.ndim != 1 or m.shape[0] != 1 << self.space.K:
            raise BadLength(f"expected {1 << self.space.K} masses, got shape {m.shape}")
        if abs(m[0]) > INPUT_TOL or abs(m.sum() - 1.0) > INPUT_TOL:
            raise NotNormalizedMass(f"mass[∅]={m[0]!r}, total={m.sum()!r}; need 0 and 1")
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    def __getitem__(self, mask) -> float:
        return float(self.mass[mask])

    def as_dict(self) -> dict:
        return {"labels": list(self.space.labels), "mass": {str(i): float(v) for i, v in enumerate(self.mass)}}


def _check_probability(p, K: int | None = None, tol: float = INPUT_TOL, what: str = "vector") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or (K is not None and p.shape[0] != K):
        raise BadLength(f"{what} has shape {p.shape}, expected ({K},)")
    if not np.all(np.isfinite(p)) or np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise NotNormalized(f"{what} {p.tolist()} is not a probability vector")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


@dataclass(frozen=True, eq=False)
class CredalSet:
    """Finite list of probability vectors whose hull is the credal set.

    Generators are renormalized on construction after passing the 1e-9 check.
    """

    space: FiniteSpace
    generators: np.ndarray

    def __post_init__(self):
        G = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if G.shape[0] < 1 or G.shape[1] != self.space.K:
            raise BadLength(f"generators shape {G.shape} does not match K={self.space.K}")
        G = np.stack([_check_probability(g, self.space.K, what=f"generator {j}") for j, g in enumerate(G)])
        G.setflags(write=False)
        object.__setattr__(self, "generators", G)

    @classmethod
    def from_rows(cls, rows) -> "CredalSet":
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        return cls(FiniteSpace.of_size(rows.shape[1]), rows)

    @property
    def m(self) -> int:
        return self.generators.shape[0]


@dataclass(frozen=True, eq=False)
class ContaminationModel:
    """``{(1 - epsilon) P + epsilon R : R any probability}``."""

    space: FiniteSpace
    base: np.ndarray
    epsilon: float

    def __post_init__(self):
        p = _check_probability(self.base, self.space.K, what="base")
        p.setflags(write=False)
        object.__setattr__(self, "base", p)
        eps = float(self.epsilon)
        if not 0.0 <= eps <= 1.0:
            raise NotNormalized(f"contamination rate {eps} outside [0, 1]")
        object.__setattr__(self, "epsilon", eps)


# ---------------------------------------------------------------------------
# operations


def validate_capacity(values, space: FiniteSpace | int, tol: float = INPUT_TOL) -> Capacity:
    """Check a lattice array against the capacity axioms and wrap it.

    Boundary values within ``tol`` of 0 and 1 are snapped to exactly 0 and 1.

    Raises
    ------
    BadLength
        The array does not have ``2**K`` entries.
    NotNormalized
        ``values[∅] != 0``, ``values[X] != 1`` or a non-finite entry.
    NotMonotone
        Some ``A ⊂ B`` has ``values[A] > values[B]``; the pair is attached.
    """
    space = _as_space(space)
    vals = np.array(values, dtype=float).ravel()
    if vals.shape[0] != 1 << space.K:
        raise BadLength(f"expected {1 << space.K} values for K={space.K}, got {vals.shape[0]}")
    if not np.all(np.isfinite(vals)):
        raise NotNormalized("capacity values must be finite")
    # order violations are reported first: they point at a specific pair
    witness = first_monotonicity_violation(vals, space.K, tol=STRUCT_TOL)
    if witness is not None:
        a, b = witness
        raise NotMonotone(
            f"ν({space.members(a)})={vals[a]!r} > ν({space.members(b)})={vals[b]!r}", witness
        )
    if abs(vals[0]) > tol or abs(vals[-1] - 1.0) > tol:
        raise NotNormalized(f"need ν(∅)=0 and ν(X)=1, got {vals[0]!r} and {vals[-1]!r}")
    vals = np.clip(vals, 0.0, 1.0)
    vals[0], vals[-1] = 0.0, 1.0
    return Capacity(space, vals)


def additive_capacity(p, space: FiniteSpace | None = None) -> Capacity:
    """The probability measure of ``p`` as a lattice array."""
    p = _check_probability(p)
    space = space or FiniteSpace.of_size(p.shape[0])
    check_lattice_size(space.K)
    vals = subset_sums(p)
    vals[-1] = 1.0
    return Capacity(space, np.clip(vals, 0.0, 1.0))


def vacuous_capacity(space: FiniteSpace | int) -> Capacity:
    space = _as_space(space)
    check_lattice_size(space.K)
    vals = np.zeros(1 << space.K)
    vals[-1] = 1.0
    return Capacity(space, vals)


def capacity_from_credal(C: CredalSet, max_k: int = MAX_LATTICE_K) -> Capacity:
    """Lower envelope ``P(A) = min_j sum_{i in A} g_j[i]`` of the generators.

    The minimum of a linear functional over the hull is attained at a
    generator, so the hull itself is never built.
    """
    check_lattice_size(C.space.K, max_k)
    vals = subset_sums(C.generators).min(axis=0)
    vals[0], vals[-1] = 0.0, 1.0
    return Capacity(C.space, np.clip(vals, 0.0, 1.0))


def conjugate(nu: Capacity) -> Capacity:
    """``ν*(A) = 1 - ν(A^c)``; for a lower probability this is the upper one."""
    if nu._dual is not None:
        return nu._dual
    vals = 1.0 - nu.values[complement_index(nu.K)]
    vals[0], vals[-1] = 0.0, 1.0
    return Capacity(nu.space, vals, _dual=nu)


@dataclass(frozen=True)
class TwoMonotoneCheck:
    ok: bool
    witness: tuple[int, int] | None = None
    slack: float = 0.0

    def __bool__(self):
        return self.ok


def is_two_monotone(nu: Capacity, tol: float = STRUCT_TOL, max_k: int = MAX_PAIR_K) -> TwoMonotoneCheck:
    """Check ``ν(A∪B) + ν(A∩B) >= ν(A) + ν(B)`` over all ordered pairs.

    On failure the most violated pair for the smallest offending ``A`` is
    returned as the witness, with its (negative) slack.
    """
    K = nu.K
    check_lattice_size(K, max_k)
    v = nu.values
    B = np.arange(1 << K)
    for A in range(1 << K):
        slack = v[A | B] + v[A & B] - v[A] - v[B]
        j = int(np.argmin(slack))
        if slack[j] < -tol:
            return TwoMonotoneCheck(False, (A, j), float(slack[j]))
    return TwoMonotoneCheck(True)


def mobius_inverse(nu: Capacity, max_k: int = MAX_LATTICE_K) -> MassFunction:
    """Möbius masses ``m(A) = sum_{B ⊆ A} (-1)^{|A|-|B|} ν(B)`` via the fast transform."""
    check_lattice_size(nu.K, max_k)
    return MassFunction(nu.space, mobius_transform(nu.values, nu.K))


@dataclass(frozen=True)
class ZetaResult:
    """Outcome of :func:`mobius_forward`.

    Signed masses can produce a non-monotone set function; in that case
    ``monotone`` is False and ``witness`` names a violating covering pair.
    The values are never clamped.
    """

    capacity: Capacity
    monotone: bool
    witness: tuple[int, int] | None = None


def mobius_forward(m: MassFunction) -> ZetaResult:
    K = m.space.K
    check_lattice_size(K)
    vals = zeta_transform(m.mass, K)
    witness = first_monotonicity_violation(vals, K)
    return ZetaResult(Capacity(m.space, vals), witness is None, witness)


def epsilon_contamination(model: ContaminationModel) -> Capacity:
    """Lower probability of the contamination neighbourhood.

    ``(1 - eps) P(A)`` on every proper subset and 1 on the whole space.
    """
    check_lattice_size(model.space.K)
    vals = (1.0 - model.epsilon) * subset_sums(model.base)
    vals[-1] = 1.0
    return Capacity(model.space, np.clip(vals, 0.0, 1.0))


def outer_approx_epsilon(lower: Capacity, tol: float = STRUCT_TOL) -> ContaminationModel:
    """Closest contamination model that is everywhere below ``lower``.

    ``eps = 1 - sum_x lower({x})`` and the base is the normalized singleton
    vector.  When all singletons are zero the base is uniform (any base gives
    the vacuous model at ``eps = 1``).

    Raises
    ------
    NotDominated
        If the resulting model is not below ``lower`` on every event, which
        happens when ``lower`` is not superadditive over singletons.
    """
    single = lower.singletons()
    total = float(single.sum())
    if total <= 0.0:
        base = np.full(lower.K, 1.0 / lower.K)
        eps = 1.0
    else:
        base = single / total
        eps = min(max(1.0 - total, 0.0), 1.0)
    model = ContaminationModel(lower.space, base, eps)
    approx = epsilon_contamination(model)
    gap = approx.values - lower.values
    worst = int(np.argmax(gap))
    if gap[worst] > tol:
        raise NotDominated(
            f"contamination approximation exceeds the capacity on {lower.space.members(worst)} by {gap[worst]:.3g}"
        )
    return model


# ---------------------------------------------------------------------------
# JSON-shaped serialization


def _lattice_from_mapping(mapping: dict, K: int, key: str) -> np.ndarray:
    n = 1 << K
    try:
        keys = {int(k): float(v) for k, v in mapping.items()}
    except (TypeError, ValueError) as exc:
        raise BadLength(f"malformed '{key}' mapping: {exc}") from None
    if sorted(keys) != list(range(n)):
        raise BadLength(f"'{key}' must have exactly the {n} keys 0..{n - 1}")
    return np.array([keys[i] for i in range(n)])


def capacity_from_dict(obj: dict) -> Capacity:
    space = FiniteSpace(tuple(obj["labels"]))
    return validate_capacity(_lattice_from_mapping(obj["values"], space.K, "values"), space)


def mass_from_dict(obj: dict) -> MassFunction:
    space = FiniteSpace(tuple(obj["labels"]))
    return MassFunction(space, _lattice_from_mapping(obj["mass"], space.K, "mass"))


__all__ = [
    "MAX_LATTICE_K",
    "MAX_PAIR_K",
    "FiniteSpace",
    "Capacity",
    "CredalSet",
    "MassFunction",
    "ContaminationModel",
    "TwoMonotoneCheck",
    "ZetaResult",
    "validate_capacity",
    "additive_capacity",
    "vacuous_capacity",
    "capacity_from_credal",
    "conjugate",
    "is_two_monotone",
    "mobius_inverse",
    "mobius_forward",
    "epsilon_contamination",
    "outer_approx_epsilon",
    "capacity_from_dict",
    "mass_from_dict",
    "subset_sums",
    "zeta_transform",
    "mobius_transform",
    "popcounts",
    "check_lattice_size",
]
