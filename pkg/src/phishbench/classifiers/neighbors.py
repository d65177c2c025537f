"""k-nearest-neighbours with Euclidean distance on z-scored features."""

from __future__ import annotations

import numpy as np

from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    Standardizer,
    TrainedClassifier,
    constant_fallback,
)

_CHUNK_ROWS = 256


class KNeighborsClassifier(TrainedClassifier):
    """Stores the training set verbatim; votes among the k nearest rows.

    Distance ties resolve to the lower training-row index (stable sort);
    vote ties resolve to the class earliest in class_list.
    """

    algorithm = "knn"

    def __init__(self, params: Hyperparams, class_list,
                 train_values: np.ndarray, train_labels: np.ndarray,
                 scaler: Standardizer):
        super().__init__(params, class_list)
        self.train_values = np.asarray(train_values, dtype=np.float64)
        self.train_labels = np.asarray(train_labels, dtype=np.int8)
        self.scaler = scaler

    @classmethod
    def fit(cls, train: FeatureMatrix, params: Hyperparams) -> TrainedClassifier:
        params.validate()
        if train.n_rows == 0:
            raise ValueError("cannot fit on an empty training set")
        fallback = constant_fallback(cls.algorithm, train, params)
        if fallback is not None:
            return fallback
        class_list = tuple(int(c) for c in np.unique(train.labels))
        scaler = Standardizer.fit(train.values)
        return cls(params, class_list, train.values.copy(),
                   train.labels.copy(), scaler)

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.train_values.shape[1])
        n_train = self.train_values.shape[0]
        k = min(self.params.k_neighbors, n_train)
        ref = self.scaler.apply(self.train_values)
        ref_norms = np.einsum("ij,ij->i", ref, ref)
        codes_train = self._codes_from(self.train_labels)
        out_codes = np.empty(test.n_rows, dtype=np.int64)
        out_scores = np.empty((test.n_rows, self.n_classes), dtype=np.float64)
        for start in range(0, test.n_rows, _CHUNK_ROWS):
            chunk = self.scaler.apply(test.values[start : start + _CHUNK_ROWS])
            # expansion form; identical training rows still compare bit-equal,
            # so the stable sort keeps the lower-index duplicate first
            chunk_norms = np.einsum("ij,ij->i", chunk, chunk)
            dist2 = chunk_norms[:, None] - 2.0 * (chunk @ ref.T) + ref_norms[None, :]
            np.maximum(dist2, 0.0, out=dist2)
            nearest = np.argsort(dist2, axis=1, kind="stable")[:, :k]
            votes = codes_train[nearest]
            counts = np.zeros((chunk.shape[0], self.n_classes), dtype=np.int64)
            rows = np.repeat(np.arange(chunk.shape[0]), k)
            np.add.at(counts, (rows, votes.ravel()), 1)
            out_codes[start : start + chunk.shape[0]] = np.argmax(counts, axis=1)
            out_scores[start : start + chunk.shape[0]] = counts / float(k)
        return PredictionVector(self._labels_from(out_codes), out_scores)

    def state_dict(self) -> dict:
        return {
            "train_values": self.train_values.tolist(),
            "train_labels": self.train_labels.tolist(),
            "scaler": self.scaler.to_state(),
        }

    @classmethod
    def from_state(cls, params, class_list, state) -> "KNeighborsClassifier":
        return cls(
            params,
            class_list,
            np.asarray(state["train_values"]),
            np.asarray(state["train_labels"]),
            Standardizer.from_state(state["scaler"]),
        )
