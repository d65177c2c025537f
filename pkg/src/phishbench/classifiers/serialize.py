"""Versioned JSON persistence for trained models.

Floats go through Python's shortest round-trip repr, so a saved model
reproduces its predictions bit for bit after loading.
"""

from __future__ import annotations

import json
from pathlib import Path

from .base import ConstantClassifier, Hyperparams, TrainedClassifier
from .forest import RandomForestClassifier
from .naive_bayes import NaiveBayesClassifier
from .neighbors import KNeighborsClassifier
from .neural_net import NeuralNetClassifier
from .svm import SVMClassifier
from .tree import DecisionTreeClassifier

FORMAT_VERSION = 1

MODEL_CLASSES: dict[str, type[TrainedClassifier]] = {
    "dtree": DecisionTreeClassifier,
    "svm": SVMClassifier,
    "rf": RandomForestClassifier,
    "nb": NaiveBayesClassifier,
    "knn": KNeighborsClassifier,
    "ann": NeuralNetClassifier,
}


def model_to_dict(model: TrainedClassifier) -> dict:
    state = model.state_dict()
    if isinstance(model, ConstantClassifier):
        state["algorithm"] = model.algorithm
    return {
        "format_version": FORMAT_VERSION,
        "algorithm": model.algorithm,
        "hyperparams": model.params.to_dict(),
        "class_list": list(model.class_list),
        "state": state,
    }


def model_from_dict(payload: dict) -> TrainedClassifier:
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(
            f"unsupported model format version {version!r}; "
            f"this build reads version {FORMAT_VERSION}"
        )
    algorithm = payload["algorithm"]
    if algorithm not in MODEL_CLASSES:
        raise ValueError(f"unknown algorithm tag {algorithm!r}")
    params = Hyperparams(**payload["hyperparams"])
    class_list = tuple(int(c) for c in payload["class_list"])
    state = payload["state"]
    if state.get("constant"):
        return ConstantClassifier.from_state(params, class_list, state)
    return MODEL_CLASSES[algorithm].from_state(params, class_list, state)


def save_model(model: TrainedClassifier, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model)), encoding="utf-8")


def load_model(path: str | Path) -> TrainedClassifier:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"{path}: no such model file")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not a valid model file ({exc})") from exc
    return model_from_dict(payload)
