"""Per-instance lower probabilities, centroid predictions and uncertainty scores."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..capacity import Capacity, CredalSet, FiniteSpace, capacity_from_credal
from ..uncertainty import MEASURES, UncertaintyScores, uncertainty_scores
from .data import InstanceRecord, PredictionTable


class SingletonSummary(NamedTuple):
    """What survives above the lattice guard: singleton minima and the generators."""

    lower: np.ndarray
    generators: np.ndarray


def _credal(record: InstanceRecord) -> CredalSet:
    return CredalSet(FiniteSpace.of_size(record.probs.shape[1]), record.probs)


def build_instance_lower_prob(record: InstanceRecord, guard: int = 20) -> Capacity | SingletonSummary:
    """Lower envelope of the predictors: ``min_j P_j(Y in A)`` for every class subset.

    Above ``guard`` classes only the singleton minima are kept, which is all
    the linear-time measure needs.
    """
    K = record.probs.shape[1]
    if K > guard:
        return SingletonSummary(record.probs.min(axis=0), record.probs)
    return capacity_from_credal(_credal(record), max_k=guard)


def centroid_predict(record: InstanceRecord) -> int:
    """Argmax of the predictor average; exact ties go to the smallest class index."""
    return int(np.argmax(record.probs.mean(axis=0)))


@dataclass(frozen=True)
class InstanceScore:
    instance_id: str
    correct: bool
    scores: UncertaintyScores


def _score_one(args) -> InstanceScore:
    record, measures, guard = args
    correct = centroid_predict(record) == record.true_label
    scores = uncertainty_scores(_credal(record), measures, max_k=guard)
    return InstanceScore(record.instance_id, bool(correct), scores)


def score_instances(
    table: PredictionTable,
    measures=tuple(MEASURES),
    guard: int = 20,
    workers: int = 1,
) -> list[InstanceScore]:
    """Correctness and uncertainty scores for every instance, ordered by instance id.

    With ``workers > 1`` instances are scored in a process pool; the merge is
    by position so the output does not depend on the number of workers.
    """
    records = sorted(table.instances, key=lambda r: r.instance_id)
    jobs = [(r, tuple(measures), guard) for r in records]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_score_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_score_one(job) for job in jobs]
