"""Evaluation metrics over confusion matrices, plus report assembly."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DataError, UndefinedMetricError


@dataclass
class ConfusionMatrix:
    """K x K count table; rows are true classes, columns predicted."""

    classes: tuple[str, ...]
    counts: np.ndarray

    @classmethod
    def from_pairs(
        cls, truths: Sequence[str], predictions: Sequence[str],
        classes: Sequence[str] | None = None,
    ) -> "ConfusionMatrix":
        if len(truths) != len(predictions):
            raise DataError(
                f"got {len(truths)} truths but {len(predictions)} predictions"
            )
        if classes is None:
            classes = sorted(set(truths) | set(predictions))
        index = {c: i for i, c in enumerate(classes)}
        counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
        for t, p in zip(truths, predictions):
            counts[index[t], index[p]] += 1
        return cls(classes=tuple(classes), counts=counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def accuracy(cm: ConfusionMatrix) -> float:
    if cm.total == 0:
        raise UndefinedMetricError("accuracy undefined for an empty confusion matrix")
    return float(np.trace(cm.counts)) / cm.total


def mcc(cm: ConfusionMatrix, with_flag: bool = False):
    """Matthews correlation coefficient; generalized form for K > 2.

    A zero denominator (a degenerate matrix) yields 0.0; pass with_flag=True
    to also learn whether that convention fired.
    """
    if cm.total == 0:
        raise UndefinedMetricError("MCC undefined for an empty confusion matrix")
    c = cm.counts.astype(np.float64)
    s = c.sum()
    trace = np.trace(c)
    t = c.sum(axis=1)  # true-class counts
    p = c.sum(axis=0)  # predicted-class counts
    num = trace * s - float(t @ p)
    den = math.sqrt(s * s - float(p @ p)) * math.sqrt(s * s - float(t @ t))
    degenerate = den == 0.0
    value = 0.0 if degenerate else num / den
    return (value, degenerate) if with_flag else value


def f1(cm: ConfusionMatrix, positive_class: str) -> float:
    """Harmonic mean of precision and recall for one class; 0 when both vanish."""
    if cm.total == 0:
        raise UndefinedMetricError("F1 undefined for an empty confusion matrix")
    if positive_class not in cm.classes:
        raise DataError(f"class {positive_class!r} not in confusion matrix")
    i = cm.classes.index(positive_class)
    tp = float(cm.counts[i, i])
    fp = float(cm.counts[:, i].sum() - tp)
    fn = float(cm.counts[i, :].sum() - tp)
    if tp == 0.0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise DataError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise UndefinedMetricError("pearson needs at least 2 points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedMetricError("pearson undefined for a zero-variance series")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


@dataclass
class EvaluationReport:
    policy: str
    cm: ConfusionMatrix
    accuracy: float
    mcc: float
    mcc_degenerate: bool
    f1_per_class: dict[str, float]
    rows: list[dict] = field(default_factory=list)

    @property
    def any_undefined(self) -> bool:
        return self.mcc_degenerate


def report(
    predictions: Sequence[str],
    truths: Sequence[str],
    policy: str,
    classes: Sequence[str] | None = None,
    rows: Sequence[dict] | None = None,
) -> EvaluationReport:
    """Assemble a full evaluation: confusion matrix, Acc, MCC, per-class F1."""
    if len(predictions) != len(truths):
        raise DataError(
            f"got {len(truths)} truths but {len(predictions)} predictions"
        )
    if not truths:
        raise DataError("nothing to evaluate: no aligned prediction/truth pairs")
    cm = ConfusionMatrix.from_pairs(truths, predictions, classes)
    mcc_value, degenerate = mcc(cm, with_flag=True)
    return EvaluationReport(
        policy=policy,
        cm=cm,
        accuracy=accuracy(cm),
        mcc=mcc_value,
        mcc_degenerate=degenerate,
        f1_per_class={c: f1(cm, c) for c in cm.classes},
        rows=list(rows) if rows else [],
    )


def format_report_text(rep: EvaluationReport) -> str:
    lines = [
        "evaluation report",
        f"policy: {rep.policy}",
        f"n: {rep.cm.total}",
        f"accuracy: {rep.accuracy:.6f}",
        f"mcc: {rep.mcc:.6f}" + ("  (degenerate: zero denominator)" if rep.mcc_degenerate else ""),
    ]
    for c in rep.cm.classes:
        lines.append(f"f1[{c}]: {rep.f1_per_class[c]:.6f}")
    lines.append("confusion matrix (rows=true, cols=predicted):")
    header = "  true\\pred " + " ".join(f"{c:>10}" for c in rep.cm.classes)
    lines.append(header)
    for i, c in enumerate(rep.cm.classes):
        row = " ".join(f"{int(v):>10}" for v in rep.cm.counts[i])
        lines.append(f"  {c:>9} {row}")
    return "\n".join(lines) + "\n"


def write_report_text(rep: EvaluationReport, path: str | Path) -> None:
    Path(path).write_text(format_report_text(rep), encoding="utf-8")


def write_report_csv(rep: EvaluationReport, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if rep.rows:
            names = list(rep.rows[0])
            writer.writerow(names)
            for row in rep.rows:
                writer.writerow([row[n] for n in names])
