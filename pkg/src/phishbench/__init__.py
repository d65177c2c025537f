"""Benchmark toolkit for phishing-website classification.

Three public surfaces: dataset handling (:mod:`phishbench.data`), the
from-scratch learning algorithms (:mod:`phishbench.classifiers` and
:mod:`phishbench.pca`), and experiment orchestration
(:mod:`phishbench.runner`, exposed on the command line as ``phishbench``).
"""

__version__ = "0.1.0"

from .data import (
    BUILTIN_DESCRIPTORS,
    ClassLabel,
    DataError,
    DatasetDescriptor,
    FeatureMatrix,
    descriptor_by_id,
    generate_synthetic,
    load_arff,
    load_csv,
    load_table,
    stratified_kfold,
    write_csv,
)
from .classifiers import (
    ALGORITHMS,
    DISPLAY_NAMES,
    Hyperparams,
    fit,
    load_model,
    predict,
    save_model,
)
from .metrics import (
    ConfusionMatrix,
    MetricsRecord,
    binary_metrics,
    confusion,
    metrics_for,
    multiclass_metrics,
)
from .pca import (
    FeatureRanking,
    PcaModel,
    feature_importance,
    fit_pca,
    inverse_transform,
    select_components,
    transform,
)

__all__ = [
    "__version__",
    "ALGORITHMS",
    "BUILTIN_DESCRIPTORS",
    "ClassLabel",
    "ConfusionMatrix",
    "DISPLAY_NAMES",
    "DataError",
    "DatasetDescriptor",
    "FeatureMatrix",
    "FeatureRanking",
    "Hyperparams",
    "MetricsRecord",
    "PcaModel",
    "binary_metrics",
    "confusion",
    "descriptor_by_id",
    "feature_importance",
    "fit",
    "fit_pca",
    "generate_synthetic",
    "inverse_transform",
    "load_arff",
    "load_csv",
    "load_model",
    "load_table",
    "metrics_for",
    "multiclass_metrics",
    "predict",
    "save_model",
    "select_components",
    "stratified_kfold",
    "transform",
    "write_csv",
]
