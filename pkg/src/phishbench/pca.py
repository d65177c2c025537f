"""Covariance PCA with a cyclic Jacobi eigensolver and loading-based ranking.

Feature importance is the sum of absolute loadings over the retained
components; a variance-weighted variant (loadings scaled by the square root
of their eigenvalue) sits behind a flag.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._util import ConvergenceWarning, DroppedFeatureWarning
from .data import (
    CANONICAL_LABEL_MAPPING,
    CONTINUOUS,
    DatasetDescriptor,
    FeatureMatrix,
)

_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


def _jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors-as-columns), unsorted. Stops when the
    off-diagonal Frobenius norm drops below 1e-12 or after 100 sweeps.
    """
    a = np.array(matrix, dtype=np.float64)
    d = a.shape[0]
    v = np.eye(d)
    if d == 1:
        return np.array([a[0, 0]]), v
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off < _JACOBI_TOL:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # 2x2 block of the Jacobi rotation J(p, q); with the stable
                # tangent root above, J.T @ a @ J annihilates a[p, q]
                rot = np.array([[c, s], [-s, c]])
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[p, q] = a[q, p] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ rot
    else:
        warnings.warn(
            "Jacobi eigensolver hit its sweep cap before reaching tolerance",
            ConvergenceWarning,
            stacklevel=3,
        )
    return np.diag(a).copy(), v


@dataclass(frozen=True)
class PcaModel:
    """Fitted projection: centering/scaling stats plus component axes (rows)."""

    mean: np.ndarray
    scale: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    explained_variance_ratio: np.ndarray
    standardized: bool
    feature_names: tuple[str, ...]
    kept_columns: tuple[int, ...]
    dropped_features: tuple[str, ...]
    source_id: str
    source_feature_count: int

    def __post_init__(self) -> None:
        for name in ("mean", "scale", "components", "eigenvalues",
                     "explained_variance_ratio"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_components(self) -> int:
        return self.components.shape[0]

    @property
    def n_features(self) -> int:
        return self.components.shape[1]


def fit_pca(m: FeatureMatrix, standardize: bool = True) -> PcaModel:
    """Fit PCA on the matrix (n-1 covariance; z-scoring on by default).

    With standardization on, constant columns are dropped with a warning;
    their importance is reported as zero downstream.
    """
    if m.n_rows < 2:
        raise ValueError("PCA needs at least 2 rows")
    x = m.values
    spans = x.max(axis=0) - x.min(axis=0)
    constant = spans == 0.0
    if constant.all():
        raise ValueError("all columns are constant; nothing to decompose")
    kept = np.arange(m.n_features)
    dropped: tuple[str, ...] = ()
    if standardize and constant.any():
        dropped = tuple(
            name for name, c in zip(m.descriptor.feature_names, constant) if c
        )
        warnings.warn(
            f"dropping zero-variance columns before standardization: "
            f"{', '.join(dropped)}",
            DroppedFeatureWarning,
            stacklevel=2,
        )
        kept = np.flatnonzero(~constant)
        x = x[:, kept]
    mean = x.mean(axis=0)
    if standardize:
        scale = x.std(axis=0, ddof=1)
    else:
        scale = np.ones(x.shape[1])
    centered = (x - mean) / scale
    cov = centered.T @ centered / (m.n_rows - 1)
    cov = (cov + cov.T) / 2.0
    eigenvalues, vectors = _jacobi_eigh(cov)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = np.where(eigenvalues[order] > 0.0, eigenvalues[order], 0.0)
    components = vectors.T[order]
    # Deterministic orientation: the largest-magnitude loading is positive.
    for row in components:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0.0:
            row *= -1.0
    total = eigenvalues.sum()
    ratios = eigenvalues / total
    names = tuple(m.descriptor.feature_names[i] for i in kept)
    return PcaModel(
        mean=mean,
        scale=scale,
        components=components,
        eigenvalues=eigenvalues,
        explained_variance_ratio=ratios,
        standardized=standardize,
        feature_names=names,
        kept_columns=tuple(int(i) for i in kept),
        dropped_features=dropped,
        source_id=m.descriptor.id,
        source_feature_count=m.n_features,
    )


def select_components(model: PcaModel, threshold: float) -> int:
    """Smallest k whose cumulative explained variance reaches the threshold."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    cumulative = np.cumsum(model.explained_variance_ratio)
    k = int(np.searchsorted(cumulative, threshold - 1e-12, side="left")) + 1
    return min(k, model.n_components)


def _pc_descriptor(model: PcaModel, k: int) -> DatasetDescriptor:
    return DatasetDescriptor(
        id=f"{model.source_id}.pca",
        feature_names=tuple(f"PC{i + 1}" for i in range(k)),
        label_mapping=dict(CANONICAL_LABEL_MAPPING),
        value_domain=(CONTINUOUS,) * k,
    )


def transform(model: PcaModel, m: FeatureMatrix, k: int) -> FeatureMatrix:
    """Project onto the first k components; labels carried through."""
    if not 1 <= k <= model.n_components:
        raise ValueError(f"k must be in [1, {model.n_components}], got {k}")
    if m.n_features != model.source_feature_count:
        raise ValueError(
            f"matrix has {m.n_features} features; model was fitted on "
            f"{model.source_feature_count}"
        )
    x = m.values[:, list(model.kept_columns)]
    projected = ((x - model.mean) / model.scale) @ model.components[:k].T
    return FeatureMatrix(projected, m.labels, _pc_descriptor(model, k))


def inverse_transform(model: PcaModel, projected: FeatureMatrix) -> FeatureMatrix:
    """Map projected rows back to the (kept) original feature space."""
    kp = projected.n_features
    if kp > model.n_components:
        raise ValueError(
            f"projection has {kp} components; model holds {model.n_components}"
        )
    x = projected.values @ model.components[:kp] * model.scale + model.mean
    descriptor = DatasetDescriptor(
        id=f"{model.source_id}.reconstructed",
        feature_names=model.feature_names,
        label_mapping=dict(CANONICAL_LABEL_MAPPING),
        value_domain=(CONTINUOUS,) * len(model.feature_names),
    )
    return FeatureMatrix(x, projected.labels, descriptor)


@dataclass(frozen=True)
class FeatureRanking:
    """Features ordered by importance, ties broken by original column index."""

    entries: tuple[tuple[str, float], ...]

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def top(self, n: int) -> tuple[tuple[str, float], ...]:
        return self.entries[:n]

    def to_csv(self) -> str:
        lines = ["rank,feature_name,score"]
        for rank, (name, score) in enumerate(self.entries, start=1):
            lines.append(f"{rank},{name},{score!r}")
        return "\n".join(lines) + "\n"


def feature_importance(
    model: PcaModel, k: int, weighted: bool = False
) -> FeatureRanking:
    """Rank original features by summed absolute loadings over k components."""
    if not 1 <= k <= model.n_components:
        raise ValueError(f"k must be in [1, {model.n_components}], got {k}")
    loadings = np.abs(model.components[:k])
    if weighted:
        loadings = loadings * np.sqrt(model.eigenvalues[:k])[:, None]
    scores = loadings.sum(axis=0)
    order = sorted(
        range(len(scores)), key=lambda j: (-scores[j], model.kept_columns[j])
    )
    entries = tuple((model.feature_names[j], float(scores[j])) for j in order)
    return FeatureRanking(entries)


def pc_scatter_export(
    model: PcaModel, m: FeatureMatrix
) -> list[tuple[float, float, int]]:
    """(pc1, pc2, label) rows for scatter plotting or CSV export."""
    if model.n_components < 2:
        raise ValueError("scatter export needs at least 2 components")
    projected = transform(model, m, 2)
    return [
        (float(projected.values[i, 0]), float(projected.values[i, 1]),
         int(projected.labels[i]))
        for i in range(projected.n_rows)
    ]
