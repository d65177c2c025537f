"""Experiment orchestration: protocols, per-fold PCA, aggregation, reports.

PCA is always fitted on the training portion of a fold and applied to its
test portion, never on pooled data. Aggregation pools the per-fold confusion
matrices (primary) and also keeps per-fold mean and standard deviation.
"""

from __future__ import annotations

import csv
import io
import json
import time
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from ._util import ToolkitWarning, derive_seed, pct, sha256_bytes
from .classifiers import ALGORITHMS, DISPLAY_NAMES, Hyperparams, fit
from .data import (
    ClassLabel,
    DataError,
    FeatureMatrix,
    csv_bytes,
    holdout,
    load_csv,
    stratified_kfold,
    three_way,
)
from .metrics import ConfusionMatrix, MetricsRecord, confusion, metrics_for
from .pca import (
    PcaModel,
    feature_importance,
    fit_pca,
    pc_scatter_export,
    select_components,
    transform,
)

PROTOCOLS = ("cv10", "holdout70", "split602020")

_TABLE_HEADER = (
    "Classifier", "Accuracy", "Specificity", "Precision", "Recall", "F1 Score"
)


@dataclass(frozen=True)
class PcaSettings:
    enabled: bool = False
    variance_threshold: float = 0.95
    standardize: bool = True

    def validate(self) -> None:
        if not 0.0 < self.variance_threshold <= 1.0:
            raise ValueError(
                f"variance threshold must be in (0, 1], "
                f"got {self.variance_threshold}"
            )


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_id: str
    classifiers: tuple[str, ...] = ALGORITHMS
    protocol: str = "cv10"
    pca: PcaSettings = field(default_factory=PcaSettings)
    seed: int = 0
    averaging: str = "macro"
    hyperparams: Hyperparams = field(default_factory=Hyperparams)
    keep_models: bool = False

    def validate(self) -> None:
        if self.protocol not in PROTOCOLS:
            raise ValueError(
                f"protocol must be one of {PROTOCOLS}, got {self.protocol!r}"
            )
        unknown = [c for c in self.classifiers if c not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown classifiers: {unknown}")
        if not self.classifiers:
            raise ValueError("at least one classifier is required")
        if self.averaging not in ("macro", "micro"):
            raise ValueError("averaging must be 'macro' or 'micro'")
        self.pca.validate()
        self.hyperparams.validate()

    def to_dict(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "classifiers": list(self.classifiers),
            "protocol": self.protocol,
            "pca": {
                "enabled": self.pca.enabled,
                "variance_threshold": self.pca.variance_threshold,
                "standardize": self.pca.standardize,
            },
            "seed": self.seed,
            "averaging": self.averaging,
            "hyperparams": self.hyperparams.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        pca = payload.get("pca", {})
        return cls(
            dataset_id=payload["dataset_id"],
            classifiers=tuple(payload.get("classifiers", ALGORITHMS)),
            protocol=payload.get("protocol", "cv10"),
            pca=PcaSettings(
                enabled=pca.get("enabled", False),
                variance_threshold=pca.get("variance_threshold", 0.95),
                standardize=pca.get("standardize", True),
            ),
            seed=payload.get("seed", 0),
            averaging=payload.get("averaging", "macro"),
            hyperparams=Hyperparams(**payload.get("hyperparams", {})),
        )


@dataclass
class FoldOutcome:
    """Everything needed to audit one fold, including the fitted PCA."""

    fold: int
    train_indices: np.ndarray
    test_indices: np.ndarray
    validation_indices: Optional[np.ndarray] = None
    pc_count: Optional[int] = None
    pca_model: Optional[PcaModel] = None


@dataclass
class ClassifierOutcome:
    algorithm: str
    fold_matrices: list[ConfusionMatrix]
    fold_metrics: list[MetricsRecord]
    pooled_matrix: ConfusionMatrix
    pooled_metrics: MetricsRecord
    metric_means: MetricsRecord
    metric_stds: MetricsRecord
    fit_seconds: float
    predict_seconds: float
    models: list = field(default_factory=list)


@dataclass
class EvaluationReport:
    config: ExperimentConfig
    class_list: tuple[ClassLabel, ...]
    n_rows: int
    folds: list[FoldOutcome]
    classifiers: dict[str, ClassifierOutcome]
    dataset_checksum: str
    warnings: list[str]
    wall_seconds: float


def _metric_stats(records: list[MetricsRecord]) -> tuple[MetricsRecord, MetricsRecord]:
    names = ("accuracy", "specificity", "precision", "recall", "f1")
    table = np.array([[getattr(r, n) for n in names] for r in records])
    means = table.mean(axis=0)
    stds = table.std(axis=0)
    return (
        MetricsRecord(*(float(v) for v in means)),
        MetricsRecord(*(float(v) for v in stds)),
    )


def _fold_layout(config: ExperimentConfig, data: FeatureMatrix):
    """Yield (train_idx, test_idx, validation_idx or None) per evaluation."""
    if config.protocol == "cv10":
        plan = stratified_kfold(data, 10, config.seed)
        return [
            (plan.complement_of(f), plan.indices_of(f), None)
            for f in range(10)
        ]
    if config.protocol == "holdout70":
        plan = holdout(data, 0.7, config.seed)
        return [(plan.indices_of(0), plan.indices_of(1), None)]
    plan = three_way(data, (0.6, 0.2, 0.2), config.seed)
    return [(plan.indices_of(0), plan.indices_of(1), plan.indices_of(2))]


def run_experiment(config: ExperimentConfig, data: FeatureMatrix) -> EvaluationReport:
    """Run one protocol over one dataset and aggregate the results."""
    config.validate()
    if data.n_rows < 2:
        raise ValueError("need at least 2 rows to run an experiment")
    started = time.perf_counter()
    class_list = data.class_list()
    if len(class_list) < 2:
        raise ValueError("experiment data must contain at least 2 classes")
    caught: list[str] = []
    folds: list[FoldOutcome] = []
    per_clf_matrices: dict[str, list[ConfusionMatrix]] = {
        c: [] for c in config.classifiers
    }
    per_clf_models: dict[str, list] = {c: [] for c in config.classifiers}
    fit_time = {c: 0.0 for c in config.classifiers}
    predict_time = {c: 0.0 for c in config.classifiers}

    with warnings.catch_warnings(record=True) as sink:
        warnings.simplefilter("always", ToolkitWarning)
        for fold_id, (train_idx, test_idx, val_idx) in enumerate(
            _fold_layout(config, data)
        ):
            train = data.take(train_idx)
            test = data.take(test_idx)
            validation = data.take(val_idx) if val_idx is not None else None
            outcome = FoldOutcome(fold_id, train_idx, test_idx, val_idx)
            if config.pca.enabled:
                model = fit_pca(train, standardize=config.pca.standardize)
                k = select_components(model, config.pca.variance_threshold)
                outcome.pc_count = k
                outcome.pca_model = model
                train = transform(model, train, k)
                test = transform(model, test, k)
                if validation is not None:
                    validation = transform(model, validation, k)
            folds.append(outcome)
            for tag in config.classifiers:
                params = replace(
                    config.hyperparams,
                    seed=derive_seed(config.seed, "fold", fold_id, tag),
                )
                tick = time.perf_counter()
                model = fit(tag, train, params, validation=validation)
                fit_time[tag] += time.perf_counter() - tick
                tick = time.perf_counter()
                predicted = model.predict(test)
                predict_time[tag] += time.perf_counter() - tick
                per_clf_matrices[tag].append(
                    confusion(test.labels, predicted.labels, class_list)
                )
                if config.keep_models:
                    per_clf_models[tag].append(model)
        outcomes: dict[str, ClassifierOutcome] = {}
        for tag in config.classifiers:
            matrices = per_clf_matrices[tag]
            fold_metrics = [
                metrics_for(cm, averaging=config.averaging) for cm in matrices
            ]
            pooled = matrices[0]
            for cm in matrices[1:]:
                pooled = pooled.merge(cm)
            means, stds = _metric_stats(fold_metrics)
            outcomes[tag] = ClassifierOutcome(
                algorithm=tag,
                fold_matrices=matrices,
                fold_metrics=fold_metrics,
                pooled_matrix=pooled,
                pooled_metrics=metrics_for(pooled, averaging=config.averaging),
                metric_means=means,
                metric_stds=stds,
                fit_seconds=fit_time[tag],
                predict_seconds=predict_time[tag],
                models=per_clf_models[tag],
            )
        caught = [str(w.message) for w in sink]
    return EvaluationReport(
        config=config,
        class_list=class_list,
        n_rows=data.n_rows,
        folds=folds,
        classifiers=outcomes,
        dataset_checksum=sha256_bytes(csv_bytes(data)),
        warnings=caught,
        wall_seconds=time.perf_counter() - started,
    )


def _ordered_tags(report: EvaluationReport) -> list[str]:
    return [tag for tag in ALGORITHMS if tag in report.classifiers]


def render_table(report: EvaluationReport, format: str = "markdown") -> str:
    """Pooled metrics as a markdown or CSV table, fixed row order."""
    rows = [
        (DISPLAY_NAMES[tag],)
        + report.classifiers[tag].pooled_metrics.as_percent_row()
        for tag in _ordered_tags(report)
    ]
    if format == "markdown":
        lines = [
            "| " + " | ".join(_TABLE_HEADER) + " |",
            "|" + "|".join(["---"] * len(_TABLE_HEADER)) + "|",
        ]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ("classifier", "accuracy", "specificity", "precision", "recall",
             "f1_score")
        )
        for row in rows:
            writer.writerow((row[0],) + tuple(v.rstrip("%") for v in row[1:]))
        return buf.getvalue()
    raise ValueError(f"unknown table format {format!r}")


def _mean_std_section(report: EvaluationReport) -> str:
    lines = [
        "| Classifier | Accuracy | Specificity | Precision | Recall | F1 Score |",
        "|---|---|---|---|---|---|",
    ]
    for tag in _ordered_tags(report):
        outcome = report.classifiers[tag]
        cells = []
        for name in ("accuracy", "specificity", "precision", "recall", "f1"):
            mean = getattr(outcome.metric_means, name)
            std = getattr(outcome.metric_stds, name)
            cells.append(f"{mean * 100:.2f}% ± {std * 100:.2f}")
        lines.append("| " + DISPLAY_NAMES[tag] + " | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render_markdown_report(report: EvaluationReport, title: str) -> str:
    body = [
        f"# {title}",
        "",
        f"Protocol: {report.config.protocol}; seed: {report.config.seed}; "
        f"rows: {report.n_rows}.",
        "",
        "## Pooled metrics",
        "",
        render_table(report, "markdown"),
        "## Per-fold mean ± std (percentage points)",
        "",
        _mean_std_section(report),
    ]
    if report.config.pca.enabled:
        counts = [str(f.pc_count) for f in report.folds]
        body.insert(
            4,
            f"Components retained per fold at "
            f"{report.config.pca.variance_threshold:.0%} variance: "
            f"{', '.join(counts)}.\n",
        )
    return "\n".join(body)


def report_manifest_entry(report: EvaluationReport) -> dict:
    return {
        "config": report.config.to_dict(),
        "rows": report.n_rows,
        "dataset_sha256": report.dataset_checksum,
        "class_list": [int(c) for c in report.class_list],
        "pc_counts": [f.pc_count for f in report.folds],
        "wall_seconds": report.wall_seconds,
        "stage_seconds": {
            tag: {
                "fit": report.classifiers[tag].fit_seconds,
                "predict": report.classifiers[tag].predict_seconds,
            }
            for tag in _ordered_tags(report)
        },
        "pooled_accuracy": {
            tag: report.classifiers[tag].pooled_metrics.accuracy
            for tag in _ordered_tags(report)
        },
        "warnings": report.warnings,
    }


def write_scatter_csv(rows: list[tuple[float, float, int]], path: Path) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("pc1", "pc2", "label"))
    for pc1, pc2, label in rows:
        writer.writerow((repr(pc1), repr(pc2), label))
    path.write_text(buf.getvalue(), encoding="utf-8")


def write_ranking_csv(
    rankings: dict[str, list[tuple[str, float]]], path: Path
) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("dataset", "rank", "feature", "score"))
    for dataset_id in sorted(rankings):
        for rank, (name, score) in enumerate(rankings[dataset_id], start=1):
            writer.writerow((dataset_id, rank, name, repr(score)))
    path.write_text(buf.getvalue(), encoding="utf-8")


def run_paper_suite(
    data_dir: str | Path,
    out_dir: str | Path,
    seed: int = 0,
    variance_threshold: float = 0.95,
    classifiers: tuple[str, ...] = ALGORITHMS,
    protocol: str = "cv10",
    render_figures: bool = True,
) -> dict:
    """Full benchmark: per dataset, full-feature and PCA tables plus exports.

    Expects canonical CSVs named d1.csv, d2.csv, d3.csv under data_dir (run
    ingest to produce them). Missing files are skipped with a notice.
    """
    from .data import BUILTIN_DESCRIPTORS  # local to avoid cycle noise

    data_dir = Path(data_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest: dict = {
        "seed": seed,
        "variance_threshold": variance_threshold,
        "protocol": protocol,
        "classifiers": list(classifiers),
        "library_version": __version__,
        "created_unix": time.time(),
        "datasets": {},
        "notices": [],
    }
    rankings: dict[str, list[tuple[str, float]]] = {}
    for dataset_id, descriptor in BUILTIN_DESCRIPTORS.items():
        source = data_dir / f"{dataset_id}.csv"
        if not source.is_file():
            manifest["notices"].append(
                f"{dataset_id}: file {source} not found; dataset skipped"
            )
            continue
        data = load_csv(source, descriptor)
        entry: dict = {"path": str(source)}
        for kind in ("full", "pca"):
            config = ExperimentConfig(
                dataset_id=dataset_id,
                classifiers=classifiers,
                protocol=protocol,
                pca=PcaSettings(
                    enabled=(kind == "pca"),
                    variance_threshold=variance_threshold,
                ),
                seed=seed,
            )
            report = run_experiment(config, data)
            stem = f"{dataset_id}_{kind}_metrics"
            (out_dir / f"{stem}.csv").write_text(
                render_table(report, "csv"), encoding="utf-8"
            )
            (out_dir / f"{stem}.md").write_text(
                render_markdown_report(
                    report, f"{dataset_id.upper()} {kind} features"
                ),
                encoding="utf-8",
            )
            entry[kind] = report_manifest_entry(report)
        with warnings.catch_warnings(record=True) as sink:
            warnings.simplefilter("always", ToolkitWarning)
            pca_model = fit_pca(data, standardize=True)
            k = select_components(pca_model, variance_threshold)
            ranking = feature_importance(pca_model, k)
            scatter = pc_scatter_export(pca_model, data)
        entry["pca_fit_warnings"] = [str(w.message) for w in sink]
        entry["components_at_threshold"] = k
        rankings[dataset_id] = list(ranking.entries)
        write_scatter_csv(scatter, out_dir / f"pc_scatter_{dataset_id}.csv")
        if render_figures:
            from . import plots

            plots.save_pc_scatter(
                scatter,
                out_dir / f"pc_scatter_{dataset_id}.png",
                title=f"{dataset_id.upper()} first two principal components",
            )
            plots.save_importance_bars(
                ranking,
                out_dir / f"feature_importance_{dataset_id}.png",
                top_n=10,
                title=f"{dataset_id.upper()} feature importance",
            )
            plots.save_accuracy_bars(
                {
                    DISPLAY_NAMES[tag]: {
                        "full": entry["full"]["pooled_accuracy"][tag],
                        "pca": entry["pca"]["pooled_accuracy"][tag],
                    }
                    for tag in classifiers
                },
                out_dir / f"accuracy_{dataset_id}.png",
                title=f"{dataset_id.upper()} pooled accuracy",
            )
        manifest["datasets"][dataset_id] = entry
    if rankings:
        write_ranking_csv(rankings, out_dir / "feature_ranking.csv")
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2), encoding="utf-8"
    )
    return manifest
