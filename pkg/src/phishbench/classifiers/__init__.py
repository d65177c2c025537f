"""Six classifiers behind a uniform fit/predict interface."""

from __future__ import annotations

from typing import Optional

from ..data import FeatureMatrix
from .base import (
    ALGORITHMS,
    DISPLAY_NAMES,
    ConstantClassifier,
    Hyperparams,
    PredictionVector,
    Standardizer,
    TrainedClassifier,
)
from .forest import RandomForestClassifier
from .naive_bayes import NaiveBayesClassifier
from .neighbors import KNeighborsClassifier
from .neural_net import NeuralNetClassifier
from .serialize import (
    FORMAT_VERSION,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
)
from .svm import SVMClassifier
from .tree import DecisionTreeClassifier

_FIT_BY_ALGORITHM = {
    "dtree": DecisionTreeClassifier.fit,
    "svm": SVMClassifier.fit,
    "rf": RandomForestClassifier.fit,
    "nb": NaiveBayesClassifier.fit,
    "knn": KNeighborsClassifier.fit,
    "ann": NeuralNetClassifier.fit,
}


def fit(
    algorithm: str,
    train: FeatureMatrix,
    params: Optional[Hyperparams] = None,
    validation: Optional[FeatureMatrix] = None,
) -> TrainedClassifier:
    """Train one classifier by tag; validation only influences the ANN."""
    if algorithm not in _FIT_BY_ALGORITHM:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
        )
    if params is None:
        params = Hyperparams()
    if algorithm == "ann":
        return NeuralNetClassifier.fit(train, params, validation=validation)
    return _FIT_BY_ALGORITHM[algorithm](train, params)


def predict(model: TrainedClassifier, test: FeatureMatrix) -> PredictionVector:
    return model.predict(test)


__all__ = [
    "ALGORITHMS",
    "DISPLAY_NAMES",
    "FORMAT_VERSION",
    "ConstantClassifier",
    "DecisionTreeClassifier",
    "Hyperparams",
    "KNeighborsClassifier",
    "NaiveBayesClassifier",
    "NeuralNetClassifier",
    "PredictionVector",
    "RandomForestClassifier",
    "SVMClassifier",
    "Standardizer",
    "TrainedClassifier",
    "fit",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "predict",
    "save_model",
]
