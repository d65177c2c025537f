"""Confusion matrices and the five benchmark metrics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phishbench._util import DegenerateMetricWarning, pct
from phishbench.data import ClassLabel
from phishbench.metrics import (
    ConfusionMatrix,
    binary_metrics,
    confusion,
    f1_score,
    metrics_for,
    multiclass_metrics,
)

from oracles import binary_metrics_by_hand, brute_confusion

P, S, L = ClassLabel.PHISHING, ClassLabel.SUSPICIOUS, ClassLabel.LEGITIMATE

BINARY = (P, L)
TERNARY = (P, S, L)


def _cm(rows, class_list):
    return ConfusionMatrix(np.array(rows, dtype=np.int64), class_list)


class TestConfusion:
    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(0)
        actual = rng.choice([-1, 0, 1], size=200)
        predicted = rng.choice([-1, 0, 1], size=200)
        cm = confusion(actual, predicted, TERNARY)
        oracle = brute_confusion(actual.tolist(), predicted.tolist(), [-1, 0, 1])
        assert cm.counts.tolist() == oracle

    def test_rows_are_actual_columns_predicted(self):
        cm = confusion([-1, -1, 1], [1, -1, 1], BINARY)
        # actual -1 predicted 1 lands at row 0 (phishing), column 1
        assert cm.counts[0, 1] == 1
        assert cm.counts[0, 0] == 1
        assert cm.counts[1, 1] == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            confusion([1, -1], [1], BINARY)

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            confusion([1, 0], [1, 1], BINARY)

    def test_empty(self):
        with pytest.raises(ValueError):
            confusion([], [], BINARY)

    def test_merge_pools_counts(self):
        a = _cm([[3, 1], [2, 4]], BINARY)
        b = _cm([[1, 0], [0, 2]], BINARY)
        merged = a.merge(b)
        assert merged.counts.tolist() == [[4, 1], [2, 6]]
        assert merged.total == a.total + b.total

    def test_merge_requires_same_classes(self):
        a = _cm([[3, 1], [2, 4]], BINARY)
        b = _cm([[1, 0, 0], [0, 2, 0], [0, 0, 1]], TERNARY)
        with pytest.raises(ValueError):
            a.merge(b)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            ConfusionMatrix(np.zeros((2, 3), dtype=np.int64), BINARY)


class TestBinaryMetrics:
    def test_against_hand_formulas(self):
        tp, fn, fp, tn = 40, 10, 5, 45
        cm = _cm([[tp, fn], [fp, tn]], BINARY)
        record = binary_metrics(cm)
        acc, spec, prec, rec, f1 = binary_metrics_by_hand(tp, fn, fp, tn)
        assert record.accuracy == pytest.approx(acc)
        assert record.specificity == pytest.approx(spec)
        assert record.precision == pytest.approx(prec)
        assert record.recall == pytest.approx(rec)
        assert record.f1 == pytest.approx(f1)

    def test_phishing_is_default_positive(self):
        # all phishing rows correct, one legitimate misclassified
        cm = _cm([[10, 0], [1, 9]], BINARY)
        record = binary_metrics(cm)
        assert record.recall == pytest.approx(1.0)
        assert record.precision == pytest.approx(10 / 11)
        assert record.specificity == pytest.approx(0.9)

    def test_published_nb_row_f1_identity(self):
        # recomputing F1 from the reference NB precision/recall pair
        f1 = f1_score(0.9944, 0.2895)
        assert abs(f1 - 0.4485) < 0.001

    def test_degenerate_ratio_warns_and_returns_zero(self):
        cm = _cm([[0, 0], [3, 7]], BINARY)  # no actual positives
        with pytest.warns(DegenerateMetricWarning):
            record = binary_metrics(cm)
        assert record.recall == 0.0
        assert record.f1 == 0.0

    def test_positive_class_must_be_present(self):
        cm = _cm([[1, 0], [0, 1]], BINARY)
        with pytest.raises(ValueError):
            binary_metrics(cm, positive=S)

    def test_needs_two_classes(self):
        cm = _cm([[1, 0, 0], [0, 1, 0], [0, 0, 1]], TERNARY)
        with pytest.raises(ValueError):
            binary_metrics(cm)

    @settings(max_examples=60, deadline=None)
    @given(
        tp=st.integers(0, 500), fn=st.integers(0, 500),
        fp=st.integers(0, 500), tn=st.integers(0, 500),
    )
    def test_f1_identity_property(self, tp, fn, fp, tn):
        if tp + fn + fp + tn == 0:
            return
        cm = _cm([[tp, fn], [fp, tn]], BINARY)
        import warnings as w

        with w.catch_warnings():
            w.simplefilter("ignore", DegenerateMetricWarning)
            record = binary_metrics(cm)
        assert record.f1 == pytest.approx(
            f1_score(record.precision, record.recall), abs=1e-12
        )


class TestMulticlass:
    def _three_class_example(self):
        counts = [[50, 3, 2], [4, 30, 6], [1, 5, 44]]
        return _cm(counts, TERNARY)

    def test_macro_against_by_hand(self):
        cm = self._three_class_example()
        record = multiclass_metrics(cm, averaging="macro")
        counts = np.array(cm.counts, dtype=float)
        total = counts.sum()
        precisions, recalls, specificities = [], [], []
        for i in range(3):
            tp = counts[i, i]
            fn = counts[i].sum() - tp
            fp = counts[:, i].sum() - tp
            tn = total - tp - fn - fp
            precisions.append(tp / (tp + fp))
            recalls.append(tp / (tp + fn))
            specificities.append(tn / (tn + fp))
        assert record.accuracy == pytest.approx(np.trace(counts) / total)
        assert record.precision == pytest.approx(np.mean(precisions))
        assert record.recall == pytest.approx(np.mean(recalls))
        assert record.specificity == pytest.approx(np.mean(specificities))
        # macro F1 defined as harmonic mean of macro precision and recall
        assert record.f1 == pytest.approx(
            f1_score(record.precision, record.recall), abs=1e-12
        )

    @settings(max_examples=40, deadline=None)
    @given(
        cells=st.lists(st.integers(0, 60), min_size=9, max_size=9),
    )
    def test_micro_identity(self, cells):
        counts = np.array(cells, dtype=np.int64).reshape(3, 3)
        if counts.sum() == 0:
            return
        cm = ConfusionMatrix(counts, TERNARY)
        import warnings as w

        with w.catch_warnings():
            w.simplefilter("ignore", DegenerateMetricWarning)
            record = multiclass_metrics(cm, averaging="micro")
        assert record.precision == pytest.approx(record.accuracy, abs=1e-12)
        assert record.recall == pytest.approx(record.accuracy, abs=1e-12)
        assert record.f1 == pytest.approx(record.accuracy, abs=1e-12)

    def test_unknown_averaging(self):
        with pytest.raises(ValueError):
            multiclass_metrics(self._three_class_example(), averaging="weird")


class TestDispatchAndFormat:
    def test_metrics_for_dispatches_by_class_count(self):
        binary = _cm([[5, 1], [2, 6]], BINARY)
        ternary = _cm([[5, 1, 0], [2, 6, 1], [0, 1, 7]], TERNARY)
        assert metrics_for(binary) == binary_metrics(binary)
        assert metrics_for(ternary) == multiclass_metrics(ternary, "macro")
        assert metrics_for(ternary, averaging="micro") == multiclass_metrics(
            ternary, "micro"
        )

    def test_pct_renders_two_decimals(self):
        assert pct(0.6048) == "60.48%"
        assert pct(1.0) == "100.00%"
        assert pct(0.0) == "0.00%"

    def test_as_percent_row(self):
        cm = _cm([[489, 1], [0, 615]], BINARY)
        row = binary_metrics(cm).as_percent_row()
        assert len(row) == 5
        assert all(cell.endswith("%") for cell in row)
