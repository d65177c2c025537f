"""One-hidden-layer network: ReLU, softmax output, Adam on cross-entropy.

No early stopping. When a validation set is supplied (three-way protocol),
the epoch whose weights scored best on it is kept; training still runs the
full epoch budget so results stay deterministic.
"""

from __future__ import annotations

import numpy as np

from .._util import rng_from
from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    Standardizer,
    TrainedClassifier,
    constant_fallback,
)

_ADAM_B1 = 0.9
_ADAM_B2 = 0.999
_ADAM_EPS = 1e-8


def _xavier_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


class _Adam:
    """Per-array Adam state with a shared step counter."""

    def __init__(self, shapes: list[tuple[int, ...]], lr: float):
        self.lr = lr
        self.step = 0
        self.m = [np.zeros(s) for s in shapes]
        self.v = [np.zeros(s) for s in shapes]

    def update(self, arrays: list[np.ndarray], grads: list[np.ndarray]) -> None:
        self.step += 1
        correction1 = 1.0 - _ADAM_B1 ** self.step
        correction2 = 1.0 - _ADAM_B2 ** self.step
        for arr, grad, m, v in zip(arrays, grads, self.m, self.v):
            m *= _ADAM_B1
            m += (1.0 - _ADAM_B1) * grad
            v *= _ADAM_B2
            v += (1.0 - _ADAM_B2) * grad * grad
            m_hat = m / correction1
            v_hat = v / correction2
            arr -= self.lr * m_hat / (np.sqrt(v_hat) + _ADAM_EPS)


class NeuralNetClassifier(TrainedClassifier):
    """d -> hidden_units (ReLU) -> n_classes (softmax)."""

    algorithm = "ann"

    def __init__(self, params: Hyperparams, class_list, scaler: Standardizer,
                 weights: list[np.ndarray], selected_epoch: int):
        super().__init__(params, class_list)
        self.scaler = scaler
        self.w1, self.b1, self.w2, self.b2 = weights
        self.selected_epoch = selected_epoch

    @property
    def n_features(self) -> int:
        return self.w1.shape[0]

    @classmethod
    def fit(
        cls,
        train: FeatureMatrix,
        params: Hyperparams,
        validation: FeatureMatrix | None = None,
    ) -> TrainedClassifier:
        params.validate()
        if train.n_rows == 0:
            raise ValueError("cannot fit on an empty training set")
        fallback = constant_fallback(cls.algorithm, train, params)
        if fallback is not None:
            return fallback
        class_list = tuple(int(c) for c in np.unique(train.labels))
        scaler = Standardizer.fit(train.values)
        rng = rng_from(params.seed, "ann")
        d, h, c = train.n_features, params.hidden_units, len(class_list)
        model = cls(
            params,
            class_list,
            scaler,
            [
                _xavier_uniform(rng, d, h),
                np.zeros(h),
                _xavier_uniform(rng, h, c),
                np.zeros(c),
            ],
            selected_epoch=params.epochs,
        )
        x = scaler.apply(train.values)
        y = model._codes_from(train.labels)
        onehot = np.zeros((x.shape[0], c))
        onehot[np.arange(x.shape[0]), y] = 1.0
        arrays = [model.w1, model.b1, model.w2, model.b2]
        optimizer = _Adam([a.shape for a in arrays], params.learning_rate)
        val_x = val_y = None
        best_score = -np.inf
        best_weights = None
        if validation is not None and validation.n_rows > 0:
            val_x = scaler.apply(validation.values)
            val_y = np.asarray(validation.labels, dtype=np.int64)
        n = x.shape[0]
        for epoch in range(1, params.epochs + 1):
            order = rng.permutation(n)
            for start in range(0, n, params.batch_size):
                batch = order[start : start + params.batch_size]
                grads = model._gradients(x[batch], onehot[batch])
                optimizer.update(arrays, grads)
            if val_x is not None:
                scores = model._forward(val_x)
                predicted = model._labels_from(np.argmax(scores, axis=1))
                accuracy = float(np.mean(predicted == val_y))
                if accuracy > best_score:  # ties keep the earliest epoch
                    best_score = accuracy
                    best_weights = [a.copy() for a in arrays]
                    model.selected_epoch = epoch
        if best_weights is not None:
            model.w1, model.b1, model.w2, model.b2 = best_weights
        return model

    def _forward(self, x: np.ndarray) -> np.ndarray:
        hidden = np.maximum(x @ self.w1 + self.b1, 0.0)
        return _softmax(hidden @ self.w2 + self.b2)

    def loss(self, x: np.ndarray, onehot: np.ndarray) -> float:
        """Mean cross-entropy on already-scaled inputs (used by tests)."""
        probs = self._forward(x)
        return float(-np.mean(np.sum(onehot * np.log(probs + 1e-300), axis=1)))

    def _gradients(self, x: np.ndarray, onehot: np.ndarray) -> list[np.ndarray]:
        """Analytic gradients of the mean cross-entropy for one batch."""
        n = x.shape[0]
        z1 = x @ self.w1 + self.b1
        a1 = np.maximum(z1, 0.0)
        probs = _softmax(a1 @ self.w2 + self.b2)
        d_logits = (probs - onehot) / n
        g_w2 = a1.T @ d_logits
        g_b2 = d_logits.sum(axis=0)
        d_a1 = d_logits @ self.w2.T
        d_z1 = d_a1 * (z1 > 0.0)
        g_w1 = x.T @ d_z1
        g_b1 = d_z1.sum(axis=0)
        return [g_w1, g_b1, g_w2, g_b2]

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.n_features)
        scores = self._forward(self.scaler.apply(test.values))
        scores = scores / scores.sum(axis=1, keepdims=True)
        codes = np.argmax(scores, axis=1)
        return PredictionVector(self._labels_from(codes), scores)

    def state_dict(self) -> dict:
        return {
            "scaler": self.scaler.to_state(),
            "w1": self.w1.tolist(),
            "b1": self.b1.tolist(),
            "w2": self.w2.tolist(),
            "b2": self.b2.tolist(),
            "selected_epoch": self.selected_epoch,
        }

    @classmethod
    def from_state(cls, params, class_list, state) -> "NeuralNetClassifier":
        weights = [
            np.asarray(state["w1"]), np.asarray(state["b1"]),
            np.asarray(state["w2"]), np.asarray(state["b2"]),
        ]
        return cls(params, class_list, Standardizer.from_state(state["scaler"]),
                   weights, state["selected_epoch"])
