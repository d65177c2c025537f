"""Figure rendering for the report path. Uses the Agg backend only."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .data import ClassLabel
from .pca import FeatureRanking, PcaModel

_CLASS_COLORS = {
    ClassLabel.PHISHING: "#d62728",
    ClassLabel.SUSPICIOUS: "#ff7f0e",
    ClassLabel.LEGITIMATE: "#2ca02c",
}


def save_pc_scatter(
    rows: list[tuple[float, float, int]],
    path: str | Path,
    title: str = "First two principal components",
) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 5))
    data = np.array([(pc1, pc2) for pc1, pc2, _ in rows])
    labels = np.array([label for _, _, label in rows])
    for code in sorted(set(labels.tolist())):
        member = ClassLabel(code)
        mask = labels == code
        ax.scatter(
            data[mask, 0],
            data[mask, 1],
            s=8,
            alpha=0.5,
            color=_CLASS_COLORS[member],
            label=member.display_name,
        )
    ax.set_xlabel("PC1")
    ax.set_ylabel("PC2")
    ax.set_title(title)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_importance_bars(
    ranking: FeatureRanking,
    path: str | Path,
    top_n: int = 10,
    title: str = "Feature importance",
) -> Path:
    path = Path(path)
    top = ranking.top(top_n)
    names = [name for name, _ in top]
    scores = [score for _, score in top]
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(top) + 1.5))
    positions = np.arange(len(top))
    ax.barh(positions, scores, color="#1f77b4")
    ax.set_yticks(positions)
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("Aggregate loading magnitude")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_accuracy_bars(
    accuracy_by_classifier: dict[str, dict[str, float]],
    path: str | Path,
    title: str = "Pooled accuracy",
) -> Path:
    """Grouped bars: one group per classifier, one bar per feature set."""
    path = Path(path)
    names = list(accuracy_by_classifier)
    kinds = sorted({k for v in accuracy_by_classifier.values() for k in v})
    fig, ax = plt.subplots(figsize=(8, 4.5))
    positions = np.arange(len(names))
    width = 0.8 / max(len(kinds), 1)
    for i, kind in enumerate(kinds):
        values = [
            100.0 * accuracy_by_classifier[name].get(kind, 0.0)
            for name in names
        ]
        ax.bar(positions + i * width, values, width, label=kind)
    ax.set_xticks(positions + width * (len(kinds) - 1) / 2)
    ax.set_xticklabels(names)
    ax.set_ylabel("Accuracy (%)")
    ax.set_ylim(0, 100)
    ax.set_title(title)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_variance_curve(
    model: PcaModel,
    path: str | Path,
    threshold: float = 0.95,
    title: str = "Cumulative explained variance",
) -> Path:
    path = Path(path)
    cumulative = np.cumsum(model.explained_variance_ratio)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(
        np.arange(1, cumulative.size + 1), cumulative, marker="o", ms=3
    )
    ax.axhline(threshold, color="#d62728", ls="--", lw=1)
    ax.set_xlabel("Number of components")
    ax.set_ylabel("Cumulative explained variance")
    ax.set_ylim(0, 1.02)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
