"""Selective-classification harness: ensemble tables in, accuracy-rejection curves out."""

from .curves import ARCurve, accuracy_rejection_curve, rejection_grid
from .data import InstanceRecord, PredictionTable, load_predictions, write_predictions
from .pipeline import RunConfig, RunResult, run_score
from .report import emit_report, spearman
from .scoring import SingletonSummary, build_instance_lower_prob, centroid_predict, score_instances
from .synth import synth_generate

__all__ = [
    "ARCurve",
    "accuracy_rejection_curve",
    "rejection_grid",
    "InstanceRecord",
    "PredictionTable",
    "load_predictions",
    "write_predictions",
    "RunConfig",
    "RunResult",
    "run_score",
    "emit_report",
    "spearman",
    "SingletonSummary",
    "build_instance_lower_prob",
    "centroid_predict",
    "score_instances",
    "synth_generate",
]
