"""Ensemble prediction tables and their long-format CSV encoding.

One CSV row per (instance, predictor)::

    instance_id,true_label,predictor_id,p_0,...,p_{K-1}
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import InconsistentShape, NotNormalized, ParseError

ROW_TOL = 1e-6
FIXED_COLUMNS = ("instance_id", "true_label", "predictor_id")


@dataclass(frozen=True, eq=False)
class InstanceRecord:
    instance_id: str
    true_label: int
    probs: np.ndarray  # (m, K), one row per predictor


@dataclass(eq=False)
class PredictionTable:
    K: int
    class_labels: list[str]
    instances: list[InstanceRecord] = field(default_factory=list)
    predictor_ids: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.instances)

    @property
    def m(self) -> int:
        return len(self.predictor_ids)


def header_for(K: int) -> list[str]:
    return [*FIXED_COLUMNS, *(f"p_{k}" for k in range(K))]


def _parse_header(row: list[str]) -> int:
    K = len(row) - len(FIXED_COLUMNS)
    if K < 1 or row != header_for(K):
        raise ParseError(
            "header must be exactly 'instance_id,true_label,predictor_id,p_0,...,p_{K-1}'", line=1
        )
    return K


def load_predictions(path) -> PredictionTable:
    """Read and validate a long-format prediction CSV.

    Rows whose sum is within 1e-6 of one are renormalized; anything worse,
    or any negative entry, is rejected.  Every instance must carry the same
    set of predictor ids and a single true label.

    Raises
    ------
    ParseError
        Malformed header, row width or number (the message carries the line).
    NotNormalized
        A row is not a probability vector; names the instance and predictor.
    InconsistentShape
        Missing or duplicated predictor rows, or conflicting true labels.
    """
    rows: dict[str, dict] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", line=1) from None
        K = _parse_header(header)
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(row)}", line=line)
            iid, label, pid = row[0], row[1], row[2]
            try:
                y = int(label)
                probs = np.array([float(v) for v in row[3:]])
            except ValueError as exc:
                raise ParseError(str(exc), line=line) from None
            if not np.all(np.isfinite(probs)):
                raise ParseError("non-finite probability", line=line)
            if not 0 <= y < K:
                raise ParseError(f"true_label {y} outside [0, {K})", line=line)
            total = probs.sum()
            if np.any(probs < 0) or abs(total - 1.0) > ROW_TOL:
                raise NotNormalized(
                    f"instance {iid!r}, predictor {pid!r}: row sums to {total!r} (line {line})"
                )
            rec = rows.setdefault(iid, {"label": y, "preds": {}})
            if rec["label"] != y:
                raise InconsistentShape(f"instance {iid!r} has conflicting true labels")
            if pid in rec["preds"]:
                raise InconsistentShape(f"instance {iid!r} repeats predictor {pid!r}")
            rec["preds"][pid] = probs / total

    table = PredictionTable(K=K, class_labels=[str(k) for k in range(K)])
    if not rows:
        return table
    predictor_ids = list(next(iter(rows.values()))["preds"])
    expected = set(predictor_ids)
    for iid, rec in rows.items():
        got = set(rec["preds"])
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise InconsistentShape(f"instance {iid!r}: missing predictors {missing}, unexpected {extra}")
        probs = np.stack([rec["preds"][pid] for pid in predictor_ids])
        probs.setflags(write=False)
        table.instances.append(InstanceRecord(iid, rec["label"], probs))
    table.predictor_ids = predictor_ids
    return table


def write_predictions(table: PredictionTable, path) -> None:
    """Write a table in the long CSV format; floats use ``repr`` so they round-trip."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header_for(table.K))
        for rec in table.instances:
            for pid, row in zip(table.predictor_ids, rec.probs):
                w.writerow([rec.instance_id, rec.true_label, pid, *(repr(float(v)) for v in row)])
