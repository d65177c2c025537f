"""Shared classifier plumbing: hyperparameters, prediction records, scaling."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .._util import DegenerateTrainingWarning
from ..data import FeatureMatrix

ALGORITHMS = ("dtree", "svm", "rf", "nb", "knn", "ann")

DISPLAY_NAMES = {
    "dtree": "D-Tree",
    "svm": "SVM",
    "rf": "RF",
    "nb": "NB",
    "knn": "KNN",
    "ann": "ANN",
}

KERNELS = ("linear", "rbf", "poly", "sigmoid")
NB_VARIANTS = ("gaussian", "categorical")


@dataclass(frozen=True)
class Hyperparams:
    """All tunables with benchmark defaults; unused fields are ignored."""

    seed: int = 0
    # decision tree
    max_depth: Optional[int] = None
    min_samples_split: int = 2
    # random forest
    n_trees: int = 100
    bootstrap: bool = True
    feature_subsample: bool = True
    # naive bayes
    nb_variant: str = "gaussian"
    nb_alpha: float = 1.0
    nb_var_floor: float = 1e-9
    # k nearest neighbours
    k_neighbors: int = 5
    # support vector machine
    svm_c: float = 1.0
    svm_kernel: str = "rbf"
    svm_gamma: Optional[float] = None  # None: 1 / (d * mean feature variance)
    svm_degree: int = 3
    svm_coef0: float = 0.0
    svm_tol: float = 1e-3
    svm_max_passes: int = 5
    svm_iter_factor: int = 10  # pair-update cap is this times n_train
    # neural network
    hidden_units: int = 64
    learning_rate: float = 1e-3
    batch_size: int = 32
    epochs: int = 100

    def validate(self) -> None:
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be at least 2")
        if self.n_trees < 1:
            raise ValueError("n_trees must be at least 1")
        if self.nb_variant not in NB_VARIANTS:
            raise ValueError(f"nb_variant must be one of {NB_VARIANTS}")
        if self.nb_alpha < 0:
            raise ValueError("nb_alpha must be non-negative")
        if self.nb_var_floor <= 0:
            raise ValueError("nb_var_floor must be positive")
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be at least 1")
        if self.svm_c <= 0:
            raise ValueError("svm_c must be positive")
        if self.svm_kernel not in KERNELS:
            raise ValueError(f"svm_kernel must be one of {KERNELS}")
        if self.svm_gamma is not None and self.svm_gamma <= 0:
            raise ValueError("svm_gamma must be positive")
        if self.svm_tol <= 0:
            raise ValueError("svm_tol must be positive")
        if self.svm_max_passes < 1 or self.svm_iter_factor < 1:
            raise ValueError("svm iteration controls must be at least 1")
        if self.hidden_units < 1:
            raise ValueError("hidden_units must be at least 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1 or self.epochs < 1:
            raise ValueError("batch_size and epochs must be at least 1")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class PredictionVector:
    """Predicted labels plus optional per-class scores aligned to class_list."""

    labels: np.ndarray
    scores: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        labels = np.ascontiguousarray(self.labels, dtype=np.int8)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        if self.scores is not None:
            scores = np.ascontiguousarray(self.scores, dtype=np.float64)
            scores.setflags(write=False)
            object.__setattr__(self, "scores", scores)


@dataclass(frozen=True)
class Standardizer:
    """Column z-scoring stats learned from a training matrix."""

    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        mean = x.mean(axis=0)
        scale = x.std(axis=0)
        scale = np.where(scale == 0.0, 1.0, scale)  # constant columns pass through
        return cls(mean, scale)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale

    def to_state(self) -> dict:
        return {"mean": self.mean.tolist(), "scale": self.scale.tolist()}

    @classmethod
    def from_state(cls, state: dict) -> "Standardizer":
        return cls(np.asarray(state["mean"]), np.asarray(state["scale"]))


class TrainedClassifier:
    """Base for fitted models: an algorithm tag, class list, and predict()."""

    algorithm: str = ""

    def __init__(self, params: Hyperparams, class_list: tuple[int, ...]):
        self.params = params
        self.class_list = tuple(int(c) for c in class_list)

    @property
    def n_classes(self) -> int:
        return len(self.class_list)

    def _codes_from(self, labels: np.ndarray) -> np.ndarray:
        """Map canonical labels to indices into class_list."""
        index = {c: i for i, c in enumerate(self.class_list)}
        return np.array([index[int(v)] for v in labels], dtype=np.int64)

    def _labels_from(self, codes: np.ndarray) -> np.ndarray:
        lookup = np.array(self.class_list, dtype=np.int8)
        return lookup[np.asarray(codes, dtype=np.int64)]

    def _check_width(self, test: FeatureMatrix, expected: int) -> None:
        if test.n_features != expected:
            raise ValueError(
                f"test matrix has {test.n_features} features; "
                f"model was trained on {expected}"
            )

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        raise NotImplementedError

    def state_dict(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_state(
        cls, params: Hyperparams, class_list: tuple[int, ...], state: dict
    ) -> "TrainedClassifier":
        raise NotImplementedError


class ConstantClassifier(TrainedClassifier):
    """Fallback when training data contains a single class."""

    def __init__(
        self,
        params: Hyperparams,
        class_list: tuple[int, ...],
        algorithm: str,
        n_features: int,
    ):
        super().__init__(params, class_list)
        self.algorithm = algorithm
        self.n_features = n_features

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        self._check_width(test, self.n_features)
        labels = np.full(test.n_rows, self.class_list[0], dtype=np.int8)
        scores = np.ones((test.n_rows, 1), dtype=np.float64)
        return PredictionVector(labels, scores)

    def state_dict(self) -> dict:
        return {"constant": True, "n_features": self.n_features}

    @classmethod
    def from_state(cls, params, class_list, state) -> "ConstantClassifier":
        return cls(params, class_list, state["algorithm"], state["n_features"])


def constant_fallback(
    algorithm: str, train: FeatureMatrix, params: Hyperparams
) -> Optional[ConstantClassifier]:
    """Constant predictor (with a warning) for single-class training sets."""
    classes = tuple(int(c) for c in np.unique(train.labels))
    if len(classes) > 1:
        return None
    warnings.warn(
        f"training set contains a single class; {algorithm} degenerates to a "
        "constant predictor",
        DegenerateTrainingWarning,
        stacklevel=3,
    )
    return ConstantClassifier(params, classes, algorithm, train.n_features)
