"""Random forest: bagged CART trees with per-split feature subsampling."""

from __future__ import annotations

import numpy as np

from .._util import rng_from
from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    TrainedClassifier,
    constant_fallback,
)
from .tree import _TreeArrays, grow_tree


def majority_vote(votes: np.ndarray, n_classes: int) -> tuple[np.ndarray, np.ndarray]:
    """Majority over per-tree class indices (rows x trees).

    Returns (winning class index per row, vote fractions). Ties go to the
    lowest class index, i.e. the class earliest in class_list.
    """
    n, t = votes.shape
    counts = np.zeros((n, n_classes), dtype=np.int64)
    for col in range(t):
        np.add.at(counts, (np.arange(n), votes[:, col]), 1)
    return np.argmax(counts, axis=1), counts / float(t)


class RandomForestClassifier(TrainedClassifier):
    """Bootstrap-aggregated trees; ceil(sqrt(d)) candidate features per split.

    With n_trees=1, bootstrap off and feature_subsample off this reproduces
    DecisionTreeClassifier exactly (same split search, same tie rules).
    """

    algorithm = "rf"

    def __init__(self, params: Hyperparams, class_list,
                 trees: list[_TreeArrays], n_features: int):
        super().__init__(params, class_list)
        self.trees = trees
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
        model = cls(params, class_list, [], train.n_features)
        codes = model._codes_from(train.labels)
        n, d = train.values.shape
        subsample = (
            int(np.ceil(np.sqrt(d))) if params.feature_subsample else None
        )
        for t in range(params.n_trees):
            rng = rng_from(params.seed, "tree", t)
            if params.bootstrap:
                rows = rng.integers(0, n, size=n)
                x, y = train.values[rows], codes[rows]
            else:
                x, y = train.values, codes
            model.trees.append(
                grow_tree(
                    x,
                    y,
                    len(class_list),
                    max_depth=params.max_depth,
                    min_samples_split=params.min_samples_split,
                    n_candidate_features=subsample,
                    rng=rng,
                )
            )
        return model

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.n_features)
        votes = np.column_stack(
            [tree.predict_codes(test.values) for tree in self.trees]
        )
        winners, fractions = majority_vote(votes, self.n_classes)
        return PredictionVector(self._labels_from(winners), fractions)

    def state_dict(self) -> dict:
        return {
            "n_features": self.n_features,
            "trees": [tree.to_state() for tree in self.trees],
        }

    @classmethod
    def from_state(cls, params, class_list, state) -> "RandomForestClassifier":
        trees = [_TreeArrays.from_state(s) for s in state["trees"]]
        return cls(params, class_list, trees, state["n_features"])
