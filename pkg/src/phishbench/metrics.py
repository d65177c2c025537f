"""Confusion matrices and the five benchmark metrics.

Binary metrics treat Phishing as the positive class by default. Degenerate
0/0 cells are reported as 0 with a warning, never NaN. Every record keeps
the F1 identity f1 = 2pr/(p+r); macro F1 is therefore the harmonic mean of
the macro-averaged precision and recall.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._util import DegenerateMetricWarning, pct
from .data import ClassLabel


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with rows = actual class, columns = predicted class."""

    counts: np.ndarray
    class_list: tuple[ClassLabel, ...]

    def __post_init__(self) -> None:
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError("confusion matrix must be square")
        if counts.shape[0] != len(self.class_list):
            raise ValueError("counts must align with class_list")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "class_list", tuple(self.class_list))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def merge(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        """Pool two matrices over the same class list."""
        if self.class_list != other.class_list:
            raise ValueError("cannot merge matrices over different class lists")
        return ConfusionMatrix(self.counts + other.counts, self.class_list)


def confusion(
    actual: np.ndarray,
    predicted: np.ndarray,
    class_list: tuple[ClassLabel, ...],
) -> ConfusionMatrix:
    """Count (actual, predicted) pairs over a fixed class list."""
    actual = np.asarray(actual, dtype=np.int64).ravel()
    predicted = np.asarray(predicted, dtype=np.int64).ravel()
    if actual.shape != predicted.shape:
        raise ValueError("actual and predicted must have equal length")
    if actual.size == 0:
        raise ValueError("cannot build a confusion matrix from zero rows")
    codes = np.array([int(c) for c in class_list], dtype=np.int64)
    index = {int(c): i for i, c in enumerate(codes)}
    c = len(codes)
    counts = np.zeros((c, c), dtype=np.int64)
    for arr, name in ((actual, "actual"), (predicted, "predicted")):
        unknown = set(np.unique(arr)) - set(index)
        if unknown:
            raise ValueError(f"{name} labels {sorted(unknown)} not in class_list")
    rows = np.array([index[int(a)] for a in actual])
    cols = np.array([index[int(p)] for p in predicted])
    np.add.at(counts, (rows, cols), 1)
    return ConfusionMatrix(counts, tuple(ClassLabel(int(c)) for c in codes))


@dataclass(frozen=True)
class MetricsRecord:
    """The five benchmark metrics as fractions in [0, 1]."""

    accuracy: float
    specificity: float
    precision: float
    recall: float
    f1: float

    def as_percent_row(self) -> tuple[str, ...]:
        return tuple(
            pct(v)
            for v in (self.accuracy, self.specificity, self.precision,
                      self.recall, self.f1)
        )


def _ratio(numerator: float, denominator: float, name: str) -> float:
    if denominator == 0:
        warnings.warn(
            f"{name} is 0/0; reporting 0", DegenerateMetricWarning, stacklevel=3
        )
        return 0.0
    return numerator / denominator


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def binary_metrics(
    cm: ConfusionMatrix, positive: ClassLabel = ClassLabel.PHISHING
) -> MetricsRecord:
    """Accuracy, specificity, precision, recall, F1 for a 2x2 matrix."""
    if len(cm.class_list) != 2:
        raise ValueError("binary metrics need exactly 2 classes")
    if positive not in cm.class_list:
        raise ValueError(f"positive class {positive!r} not in class_list")
    p = cm.class_list.index(positive)
    n = 1 - p
    tp = float(cm.counts[p, p])
    fn = float(cm.counts[p, n])
    fp = float(cm.counts[n, p])
    tn = float(cm.counts[n, n])
    precision = _ratio(tp, tp + fp, "precision")
    recall = _ratio(tp, tp + fn, "recall")
    return MetricsRecord(
        accuracy=_ratio(tp + tn, tp + tn + fp + fn, "accuracy"),
        specificity=_ratio(tn, tn + fp, "specificity"),
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
    )


def multiclass_metrics(cm: ConfusionMatrix, averaging: str = "macro") -> MetricsRecord:
    """One-vs-rest metrics averaged over classes (macro) or pooled (micro)."""
    if averaging not in ("macro", "micro"):
        raise ValueError(f"averaging must be 'macro' or 'micro', got {averaging!r}")
    counts = cm.counts.astype(np.float64)
    total = counts.sum()
    if total == 0:
        raise ValueError("empty confusion matrix")
    tp = np.diag(counts)
    fn = counts.sum(axis=1) - tp
    fp = counts.sum(axis=0) - tp
    tn = total - tp - fn - fp
    accuracy = tp.sum() / total
    if averaging == "micro":
        precision = _ratio(tp.sum(), tp.sum() + fp.sum(), "precision")
        recall = _ratio(tp.sum(), tp.sum() + fn.sum(), "recall")
        specificity = _ratio(tn.sum(), tn.sum() + fp.sum(), "specificity")
    else:
        precision = float(
            np.mean([_ratio(t, t + f, "precision") for t, f in zip(tp, fp)])
        )
        recall = float(
            np.mean([_ratio(t, t + f, "recall") for t, f in zip(tp, fn)])
        )
        specificity = float(
            np.mean([_ratio(t, t + f, "specificity") for t, f in zip(tn, fp)])
        )
    return MetricsRecord(
        accuracy=float(accuracy),
        specificity=float(specificity),
        precision=float(precision),
        recall=float(recall),
        f1=f1_score(float(precision), float(recall)),
    )


def metrics_for(
    cm: ConfusionMatrix,
    positive: ClassLabel = ClassLabel.PHISHING,
    averaging: str = "macro",
) -> MetricsRecord:
    """Binary metrics for 2-class matrices, averaged metrics otherwise."""
    if len(cm.class_list) == 2:
        return binary_metrics(cm, positive)
    return multiclass_metrics(cm, averaging)
