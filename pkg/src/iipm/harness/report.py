"""Machine-readable run reports: one JSON summary and one plot-ready CSV."""

from __future__ import annotations

import csv
import itertools
import json
import math
from pathlib import Path

import numpy as np
from scipy.stats import spearmanr

from .curves import ARCurve

REPORT_JSON = "report.json"
CURVES_CSV = "ar_curves.csv"


def spearman(a, b) -> float | None:
    """Spearman rank correlation, ``None`` when undefined (a constant vector)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 2 or np.all(a == a[0]) or np.all(b == b[0]):
        return None
    rho = spearmanr(a, b).statistic
    return None if math.isnan(rho) else float(rho)


def pairwise_spearman(score_vectors: dict[str, np.ndarray]) -> dict[str, float | None]:
    return {
        f"{a}__{b}": spearman(score_vectors[a], score_vectors[b])
        for a, b in itertools.combinations(score_vectors, 2)
    }


def emit_report(
    curves: dict[str, ARCurve | None],
    score_vectors: dict[str, np.ndarray],
    config: dict,
    path,
    n_instances: int,
) -> tuple[Path, Path]:
    """Write ``report.json`` and ``ar_curves.csv`` into directory ``path``.

    ``curves`` maps every requested measure to its curve, or to ``None`` when
    the measure was skipped by the lattice guard.  Output is byte-stable for
    identical inputs.
    """
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    measures = {}
    for name, curve in curves.items():
        if curve is None:
            measures[name] = {"rejection_rates": [], "accuracies": [], "auc": None, "skipped": True}
        else:
            measures[name] = {
                "rejection_rates": [float(v) for v in curve.rejection_rates],
                "accuracies": [float(v) for v in curve.accuracies],
                "auc": curve.auc,
                "skipped": False,
            }
    report = {
        "config": config,
        "measures": measures,
        "correlations": pairwise_spearman(score_vectors),
        "n_instances": int(n_instances),
    }
    json_path = out / REPORT_JSON
    json_path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")

    csv_path = out / CURVES_CSV
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["measure", "rejection_rate", "accuracy"])
        for name, curve in curves.items():
            if curve is None:
                continue
            for rate, acc in zip(curve.rejection_rates, curve.accuracies):
                w.writerow([name, repr(float(rate)), repr(float(acc))])
    return json_path, csv_path
