"""Stratified folding and partitioning invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phishbench._util import StratificationWarning
from phishbench.data import (
    holdout,
    split,
    stratified_kfold,
    three_way,
)

from conftest import matrix_from


def _labels_matrix(labels):
    labels = np.asarray(labels, dtype=np.int8)
    return matrix_from(np.zeros((labels.size, 1)), labels)


class TestStratifiedKfold:
    def test_dataset2_shaped_fold_sizes(self):
        # same class sizes as the 11055-row corpus: 4898 / 6157
        labels = np.array([-1] * 4898 + [1] * 6157, dtype=np.int8)
        m = _labels_matrix(labels)
        plan = stratified_kfold(m, 10, seed=0)
        sizes = []
        phishing_per_fold = []
        for f in range(10):
            idx = plan.indices_of(f)
            sizes.append(idx.size)
            phishing_per_fold.append(int((labels[idx] == -1).sum()))
        assert set(sizes) <= {1105, 1106}
        assert sum(sizes) == 11055
        assert set(phishing_per_fold) <= {489, 490}
        assert sum(phishing_per_fold) == 4898

    def test_k_out_of_range(self):
        m = _labels_matrix([1, -1, 1, -1])
        with pytest.raises(ValueError):
            stratified_kfold(m, 1, seed=0)
        with pytest.raises(ValueError):
            stratified_kfold(m, 5, seed=0)

    def test_determinism(self):
        m = _labels_matrix([1, -1] * 50)
        a = stratified_kfold(m, 10, seed=42)
        b = stratified_kfold(m, 10, seed=42)
        assert a.fold_assignments.tolist() == b.fold_assignments.tolist()

    def test_seed_changes_assignment(self):
        m = _labels_matrix([1, -1] * 50)
        a = stratified_kfold(m, 10, seed=1)
        b = stratified_kfold(m, 10, seed=2)
        assert a.fold_assignments.tolist() != b.fold_assignments.tolist()

    def test_small_class_warns(self):
        m = _labels_matrix([1] * 20 + [-1] * 2)
        with pytest.warns(StratificationWarning):
            stratified_kfold(m, 5, seed=0)

    def test_coverage_and_disjointness(self):
        m = _labels_matrix([1, -1, 0] * 11)
        plan = stratified_kfold(m, 4, seed=3)
        seen = np.concatenate([plan.indices_of(f) for f in range(4)])
        assert sorted(seen.tolist()) == list(range(33))

    @settings(max_examples=40, deadline=None)
    @given(
        n_a=st.integers(min_value=5, max_value=120),
        n_b=st.integers(min_value=5, max_value=120),
        k=st.integers(min_value=2, max_value=5),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_per_class_and_total_counts_within_one(self, n_a, n_b, k, seed):
        labels = np.array([-1] * n_a + [1] * n_b, dtype=np.int8)
        m = _labels_matrix(labels)
        plan = stratified_kfold(m, k, seed=seed)
        fold_sizes = []
        for f in range(k):
            idx = plan.indices_of(f)
            fold_sizes.append(idx.size)
            for code, n_class in ((-1, n_a), (1, n_b)):
                count = int((labels[idx] == code).sum())
                assert abs(count - n_class / k) < 1.0 + 1e-9
        assert max(fold_sizes) - min(fold_sizes) <= 1


class TestHoldout:
    def test_70_30_sizes(self):
        m = _labels_matrix([1] * 700 + [-1] * 300)
        plan = holdout(m, 0.7, seed=0)
        train = plan.indices_of("train")
        test = plan.indices_of("test")
        assert abs(train.size - 700) <= 1
        assert train.size + test.size == 1000
        labels = m.labels
        assert abs(int((labels[train] == -1).sum()) - 210) <= 1

    def test_bad_fraction(self):
        m = _labels_matrix([1, -1, 1, -1])
        for frac in (0.0, 1.0, -0.2, 1.7):
            with pytest.raises(ValueError):
                holdout(m, frac, seed=0)


class TestThreeWay:
    def test_60_20_20_sizes(self):
        m = _labels_matrix([1] * 500 + [-1] * 500)
        plan = three_way(m, (0.6, 0.2, 0.2), seed=5)
        sizes = [plan.indices_of(p).size for p in ("train", "test", "validation")]
        assert abs(sizes[0] - 600) <= 2
        assert abs(sizes[1] - 200) <= 2
        assert abs(sizes[2] - 200) <= 2
        assert sum(sizes) == 1000

    def test_partition_property(self):
        m = _labels_matrix([1, -1, 0] * 40)
        plan = three_way(m, (0.6, 0.2, 0.2), seed=1)
        parts = [set(plan.indices_of(i).tolist()) for i in range(3)]
        assert parts[0] | parts[1] | parts[2] == set(range(120))
        assert parts[0] & parts[1] == set()
        assert parts[0] & parts[2] == set()
        assert parts[1] & parts[2] == set()

    def test_fracs_must_sum_to_one(self):
        m = _labels_matrix([1, -1] * 10)
        with pytest.raises(ValueError):
            three_way(m, (0.5, 0.2, 0.2), seed=0)


class TestSplit:
    def test_split_returns_assigned_rows(self):
        values = np.arange(12, dtype=np.float64).reshape(12, 1)
        m = matrix_from(values, [1, -1] * 6)
        plan = stratified_kfold(m, 3, seed=7)
        for f in range(3):
            sub = split(m, plan, f)
            expected = values[plan.indices_of(f), 0]
            assert sub.values[:, 0].tolist() == expected.tolist()

    def test_selector_out_of_range(self):
        m = _labels_matrix([1, -1] * 6)
        plan = stratified_kfold(m, 3, seed=7)
        with pytest.raises(ValueError):
            split(m, plan, 3)
        with pytest.raises(ValueError):
            plan.indices_of("nonsense")
