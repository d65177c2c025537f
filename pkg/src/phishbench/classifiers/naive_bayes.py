"""Naive Bayes: Gaussian likelihoods by default, categorical behind a flag."""

from __future__ import annotations

import numpy as np

from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    TrainedClassifier,
    constant_fallback,
)


def _log_posteriors(joint: np.ndarray) -> np.ndarray:
    """Normalize log-joint rows into log-posteriors via log-sum-exp."""
    peak = joint.max(axis=1, keepdims=True)
    log_norm = peak + np.log(np.exp(joint - peak).sum(axis=1, keepdims=True))
    return joint - log_norm


class NaiveBayesClassifier(TrainedClassifier):
    """Per-feature class-conditional likelihoods with independence assumed.

    Gaussian variant: per class/feature mean and variance (floored).
    Categorical variant: Laplace-smoothed value counts over the categories
    observed in training for each feature.
    """

    algorithm = "nb"

    def __init__(self, params: Hyperparams, class_list, n_features: int):
        super().__init__(params, class_list)
        self.n_features = n_features
        self.log_priors: np.ndarray | None = None
        # gaussian state
        self.means: np.ndarray | None = None
        self.variances: np.ndarray | None = None
        # categorical state
        self.categories: list[np.ndarray] | None = None
        self.log_likelihoods: list[np.ndarray] | None = None
        self.log_unseen: np.ndarray | None = None

    @classmethod
    def fit(cls, train: FeatureMatrix, params: Hyperparams) -> TrainedClassifier:
        params.validate()
        if train.n_rows == 0:
            raise ValueError("cannot fit on an empty training set")
        fallback = constant_fallback(cls.algorithm, train, params)
        if fallback is not None:
            return fallback
        class_list = tuple(int(c) for c in np.unique(train.labels))
        model = cls(params, class_list, train.n_features)
        codes = model._codes_from(train.labels)
        c = len(class_list)
        class_counts = np.bincount(codes, minlength=c).astype(np.float64)
        model.log_priors = np.log(class_counts / train.n_rows)
        if params.nb_variant == "gaussian":
            model._fit_gaussian(train.values, codes, c, params)
        else:
            model._fit_categorical(train.values, codes, c, params)
        return model

    def _fit_gaussian(self, x, codes, c, params) -> None:
        d = x.shape[1]
        means = np.empty((c, d))
        variances = np.empty((c, d))
        for k in range(c):
            block = x[codes == k]
            means[k] = block.mean(axis=0)
            variances[k] = np.maximum(block.var(axis=0), params.nb_var_floor)
        self.means, self.variances = means, variances

    def _fit_categorical(self, x, codes, c, params) -> None:
        alpha = params.nb_alpha
        class_counts = np.bincount(codes, minlength=c).astype(np.float64)
        self.categories = []
        self.log_likelihoods = []
        unseen = np.empty((c, x.shape[1]))
        for j in range(x.shape[1]):
            cats = np.unique(x[:, j])
            v = cats.size
            counts = np.zeros((c, v))
            idx = np.searchsorted(cats, x[:, j])
            np.add.at(counts, (codes, idx), 1.0)
            self.categories.append(cats)
            with np.errstate(divide="ignore"):  # alpha=0 legitimately yields log(0)
                self.log_likelihoods.append(
                    np.log((counts + alpha) / (class_counts[:, None] + alpha * v))
                )
            unseen[:, j] = np.log(alpha / (class_counts + alpha * v)) if alpha > 0 \
                else -np.inf
        self.log_unseen = unseen

    def _log_joint(self, x: np.ndarray) -> np.ndarray:
        n = x.shape[0]
        if self.params.nb_variant == "gaussian":
            joint = np.tile(self.log_priors, (n, 1))
            for k in range(self.n_classes):
                diff = x - self.means[k]
                joint[:, k] += np.sum(
                    -0.5 * (np.log(2.0 * np.pi * self.variances[k])
                            + diff * diff / self.variances[k]),
                    axis=1,
                )
            return joint
        joint = np.tile(self.log_priors, (n, 1))
        for j in range(x.shape[1]):
            cats = self.categories[j]
            pos = np.searchsorted(cats, x[:, j])
            pos_clipped = np.clip(pos, 0, cats.size - 1)
            known = cats[pos_clipped] == x[:, j]
            table = self.log_likelihoods[j]
            contrib = np.where(
                known[:, None],
                table.T[pos_clipped],
                self.log_unseen[:, j][None, :],
            )
            joint += contrib
        return joint

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.n_features)
        log_post = _log_posteriors(self._log_joint(test.values))
        scores = np.exp(log_post)
        scores /= scores.sum(axis=1, keepdims=True)
        codes = np.argmax(scores, axis=1)
        return PredictionVector(self._labels_from(codes), scores)

    def posteriors(self, test: FeatureMatrix) -> np.ndarray:
        """Class posterior probabilities aligned with class_list."""
        return np.asarray(self.predict(test).scores)

    def state_dict(self) -> dict:
        state: dict = {
            "n_features": self.n_features,
            "log_priors": self.log_priors.tolist(),
        }
        if self.params.nb_variant == "gaussian":
            state["means"] = self.means.tolist()
            state["variances"] = self.variances.tolist()
        else:
            state["categories"] = [c.tolist() for c in self.categories]
            state["log_likelihoods"] = [t.tolist() for t in self.log_likelihoods]
            state["log_unseen"] = self.log_unseen.tolist()
        return state

    @classmethod
    def from_state(cls, params, class_list, state) -> "NaiveBayesClassifier":
        model = cls(params, class_list, state["n_features"])
        model.log_priors = np.asarray(state["log_priors"])
        if params.nb_variant == "gaussian":
            model.means = np.asarray(state["means"])
            model.variances = np.asarray(state["variances"])
        else:
            model.categories = [np.asarray(c) for c in state["categories"]]
            model.log_likelihoods = [np.asarray(t) for t in state["log_likelihoods"]]
            model.log_unseen = np.asarray(state["log_unseen"])
        return model
