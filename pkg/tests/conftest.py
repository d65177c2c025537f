import numpy as np
import pytest

from phishbench.data import (
    CANONICAL_LABEL_MAPPING,
    CONTINUOUS,
    DatasetDescriptor,
    FeatureMatrix,
    descriptor_by_id,
    generate_synthetic,
)


def toy_descriptor(n_features: int, dataset_id: str = "toy") -> DatasetDescriptor:
    return DatasetDescriptor(
        id=dataset_id,
        feature_names=tuple(f"f{i}" for i in range(n_features)),
        label_mapping=dict(CANONICAL_LABEL_MAPPING),
        value_domain=(CONTINUOUS,) * n_features,
    )


def matrix_from(values, labels, dataset_id: str = "toy") -> FeatureMatrix:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(-1, 1)
    labels = np.asarray(labels, dtype=np.int8)
    return FeatureMatrix(
        values=values,
        labels=labels,
        descriptor=toy_descriptor(values.shape[1], dataset_id),
    )


@pytest.fixture(scope="session")
def d1_synth() -> FeatureMatrix:
    return generate_synthetic(descriptor_by_id("d1"), 240, seed=11)


@pytest.fixture(scope="session")
def d2_synth() -> FeatureMatrix:
    return generate_synthetic(descriptor_by_id("d2"), 240, seed=12)


@pytest.fixture(scope="session")
def d3_synth() -> FeatureMatrix:
    return generate_synthetic(descriptor_by_id("d3"), 240, seed=13)


@pytest.fixture(scope="session")
def blobs() -> FeatureMatrix:
    """Two well-separated Gaussian blobs, 4 continuous features."""
    rng = np.random.default_rng(77)
    a = rng.normal(loc=-2.0, scale=0.6, size=(60, 4))
    b = rng.normal(loc=2.0, scale=0.6, size=(60, 4))
    values = np.vstack([a, b])
    labels = np.array([-1] * 60 + [1] * 60, dtype=np.int8)
    order = rng.permutation(120)
    return matrix_from(values[order], labels[order], "blobs")


def pytest_terminal_summary(terminalreporter):
    """Echo acceptance verdicts after the run; capture hides the prints."""
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
