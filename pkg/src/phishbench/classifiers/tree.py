"""CART decision tree: Gini impurity, midpoint thresholds, array storage."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    TrainedClassifier,
    constant_fallback,
)

_NO_FEATURE = -1


class _TreeArrays:
    """Flat tree: feature < 0 marks a leaf; children index into the arrays."""

    __slots__ = ("feature", "threshold", "left", "right", "counts")

    def __init__(self, feature, threshold, left, right, counts):
        self.feature = np.asarray(feature, dtype=np.int32)
        self.threshold = np.asarray(threshold, dtype=np.float64)
        self.left = np.asarray(left, dtype=np.int32)
        self.right = np.asarray(right, dtype=np.int32)
        self.counts = np.asarray(counts, dtype=np.float64)

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def predict_codes(self, x: np.ndarray) -> np.ndarray:
        """Route rows to leaves; returns the majority class index per row."""
        node = np.zeros(x.shape[0], dtype=np.int32)
        while True:
            feat = self.feature[node]
            live = np.flatnonzero(feat >= 0)
            if live.size == 0:
                break
            cur = node[live]
            go_left = x[live, self.feature[cur]] <= self.threshold[cur]
            node[live] = np.where(go_left, self.left[cur], self.right[cur])
        # argmax over stored counts; first maximum wins ties (earliest class)
        return np.argmax(self.counts[node], axis=1)

    def leaf_proportions(self, x: np.ndarray) -> np.ndarray:
        node = np.zeros(x.shape[0], dtype=np.int32)
        while True:
            feat = self.feature[node]
            live = np.flatnonzero(feat >= 0)
            if live.size == 0:
                break
            cur = node[live]
            go_left = x[live, self.feature[cur]] <= self.threshold[cur]
            node[live] = np.where(go_left, self.left[cur], self.right[cur])
        counts = self.counts[node]
        return counts / counts.sum(axis=1, keepdims=True)

    def to_state(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "counts": self.counts.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "_TreeArrays":
        return cls(
            state["feature"], state["threshold"], state["left"],
            state["right"], state["counts"],
        )


def _best_split(
    x: np.ndarray,
    y: np.ndarray,
    rows: np.ndarray,
    candidates: np.ndarray,
    n_classes: int,
) -> Optional[tuple[int, float]]:
    """Best (feature, midpoint threshold) by Gini over candidate features.

    Maximizes sum(left_counts^2)/n_left + sum(right_counts^2)/n_right, which
    orders splits identically to minimizing weighted Gini. Ties keep the
    earliest candidate feature and the lowest threshold.
    """
    n = rows.size
    ysub = y[rows]
    onehot = np.zeros((n, n_classes), dtype=np.float64)
    onehot[np.arange(n), ysub] = 1.0
    best_score = -np.inf
    best: Optional[tuple[int, float]] = None
    total = onehot.sum(axis=0)
    for f in candidates:
        col = x[rows, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        boundaries = np.flatnonzero(xs[1:] > xs[:-1])
        if boundaries.size == 0:
            continue
        cum = np.cumsum(onehot[order], axis=0)
        left = cum[boundaries]
        right = total - left
        n_left = boundaries + 1.0
        n_right = n - n_left
        score = (left * left).sum(axis=1) / n_left
        score += (right * right).sum(axis=1) / n_right
        i = int(np.argmax(score))  # first max: lowest threshold wins ties
        if score[i] > best_score:
            best_score = score[i]
            b = boundaries[i]
            best = (int(f), float((xs[b] + xs[b + 1]) / 2.0))
    return best


def grow_tree(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    *,
    max_depth: Optional[int] = None,
    min_samples_split: int = 2,
    n_candidate_features: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> _TreeArrays:
    """Grow a CART tree to purity (or the configured stopping limits).

    y holds class indices in [0, n_classes). When n_candidate_features is
    set, each split samples that many features without replacement from rng.
    """
    d = x.shape[1]
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    counts: list[np.ndarray] = []

    def new_node() -> int:
        feature.append(_NO_FEATURE)
        threshold.append(0.0)
        left.append(_NO_FEATURE)
        right.append(_NO_FEATURE)
        counts.append(np.zeros(n_classes))
        return len(feature) - 1

    root = new_node()
    stack: list[tuple[int, np.ndarray, int]] = [(root, np.arange(x.shape[0]), 0)]
    while stack:
        node, rows, depth = stack.pop()
        node_counts = np.bincount(y[rows], minlength=n_classes).astype(np.float64)
        counts[node] = node_counts
        if (
            rows.size < min_samples_split
            or np.count_nonzero(node_counts) <= 1
            or (max_depth is not None and depth >= max_depth)
        ):
            continue
        if n_candidate_features is not None and n_candidate_features < d:
            cand = np.sort(rng.choice(d, size=n_candidate_features, replace=False))
        else:
            cand = np.arange(d)
        found = _best_split(x, y, rows, cand, n_classes)
        if found is None:
            continue
        f, thr = found
        feature[node] = f
        threshold[node] = thr
        mask = x[rows, f] <= thr
        left_id = new_node()
        right_id = new_node()
        left[node] = left_id
        right[node] = right_id
        # push right first so the left branch is built first (fixed order)
        stack.append((right_id, rows[~mask], depth + 1))
        stack.append((left_id, rows[mask], depth + 1))
    return _TreeArrays(feature, threshold, left, right, counts)


class DecisionTreeClassifier(TrainedClassifier):
    """CART with no depth limit by default; leaves store class counts."""

    algorithm = "dtree"

    def __init__(self, params: Hyperparams, class_list, tree: _TreeArrays,
                 n_features: int):
        super().__init__(params, class_list)
        self.tree = tree
        self.n_features = n_features

    @classmethod
    def fit(cls, train: FeatureMatrix, params: Hyperparams) -> TrainedClassifier:
        params.validate()
        if train.n_rows == 0:
            raise ValueError("cannot fit on an empty training set")
        fallback = constant_fallback(cls.algorithm, train, params)
        if fallback is not None:
            return fallback
        class_list = tuple(int(c) for c in np.unique(train.labels))
        model = cls(params, class_list, None, train.n_features)
        codes = model._codes_from(train.labels)
        model.tree = grow_tree(
            train.values,
            codes,
            len(class_list),
            max_depth=params.max_depth,
            min_samples_split=params.min_samples_split,
        )
        return model

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.n_features)
        codes = self.tree.predict_codes(test.values)
        scores = self.tree.leaf_proportions(test.values)
        return PredictionVector(self._labels_from(codes), scores)

    def state_dict(self) -> dict:
        return {"n_features": self.n_features, "tree": self.tree.to_state()}

    @classmethod
    def from_state(cls, params, class_list, state) -> "DecisionTreeClassifier":
        return cls(
            params, class_list, _TreeArrays.from_state(state["tree"]),
            state["n_features"],
        )
