"""Naive Bayes (both variants) and k-nearest neighbors behavior."""

import numpy as np
import pytest

from phishbench._util import DegenerateTrainingWarning
from phishbench.classifiers import Hyperparams
from phishbench.classifiers.base import ConstantClassifier
from phishbench.classifiers.naive_bayes import NaiveBayesClassifier
from phishbench.classifiers.neighbors import KNeighborsClassifier

from conftest import matrix_from
from oracles import categorical_nb_posteriors


class TestCategoricalNB:
    def _toy(self):
        x = np.array([
            [-1, 1], [-1, 0], [-1, 1], [0, 1],
            [1, 0], [1, 1], [0, 0], [1, 0],
        ], dtype=np.float64)
        y = np.array([-1, -1, -1, -1, 1, 1, 1, 1], dtype=np.int8)
        return matrix_from(x, y)

    def test_posteriors_match_hand_oracle(self):
        m = self._toy()
        params = Hyperparams(seed=0, nb_variant="categorical", nb_alpha=1.0)
        model = NaiveBayesClassifier.fit(m, params)
        queries = [(-1.0, 1.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0)]
        train_x = [tuple(row) for row in m.values.tolist()]
        train_y = m.labels.tolist()
        for query in queries:
            q = matrix_from(np.array([query]), [1])
            got = model.posteriors(q)[0]
            expected = categorical_nb_posteriors(train_x, train_y, query)
            assert got[0] == pytest.approx(expected[-1], abs=1e-10)
            assert got[1] == pytest.approx(expected[1], abs=1e-10)

    def test_unseen_category_gets_smoothed_mass(self):
        m = self._toy()
        params = Hyperparams(seed=0, nb_variant="categorical", nb_alpha=1.0)
        model = NaiveBayesClassifier.fit(m, params)
        # value 7 never appears in training; posteriors stay finite
        q = matrix_from(np.array([[7.0, 7.0]]), [1])
        post = model.posteriors(q)[0]
        assert np.isfinite(post).all()
        assert post.sum() == pytest.approx(1.0, abs=1e-12)

    def test_alpha_zero_unseen_is_impossible(self):
        m = self._toy()
        params = Hyperparams(seed=0, nb_variant="categorical", nb_alpha=0.0)
        model = NaiveBayesClassifier.fit(m, params)
        # -1 appears only in class -1 rows for feature 0
        q = matrix_from(np.array([[-1.0, 1.0]]), [1])
        post = model.posteriors(q)[0]
        assert post[1] == pytest.approx(0.0, abs=1e-300)

    def test_predict_picks_max_posterior(self):
        m = self._toy()
        params = Hyperparams(seed=0, nb_variant="categorical")
        model = NaiveBayesClassifier.fit(m, params)
        predicted = model.predict(m)
        posts = model.posteriors(m)
        class_array = np.array([-1, 1], dtype=np.int8)
        assert np.array_equal(predicted.labels, class_array[posts.argmax(axis=1)])


class TestGaussianNB:
    def test_matches_hand_computed_densities(self):
        x = np.array([[1.0], [2.0], [3.0], [10.0], [11.0], [12.0]])
        y = np.array([-1, -1, -1, 1, 1, 1], dtype=np.int8)
        m = matrix_from(x, y)
        model = NaiveBayesClassifier.fit(m, Hyperparams(seed=0))
        q = matrix_from(np.array([[2.5]]), [1])
        post = model.posteriors(q)[0]

        def logpdf(v, mean, var):
            return -0.5 * (np.log(2 * np.pi * var) + (v - mean) ** 2 / var)

        # population variance (ddof=0) of {1,2,3} is 2/3
        log_a = np.log(0.5) + logpdf(2.5, 2.0, 2 / 3)
        log_b = np.log(0.5) + logpdf(2.5, 11.0, 2 / 3)
        expected = np.exp(log_a) / (np.exp(log_a) + np.exp(log_b))
        assert post[0] == pytest.approx(expected, abs=1e-12)

    def test_variance_floor_prevents_divide_by_zero(self):
        x = np.array([[1.0, 5.0], [1.0, 6.0], [2.0, 5.0], [2.0, 6.0]])
        y = np.array([-1, -1, 1, 1], dtype=np.int8)
        m = matrix_from(x, y)
        model = NaiveBayesClassifier.fit(m, Hyperparams(seed=0))
        predicted = model.predict(m)
        assert (predicted.labels == y).all()

    def test_learns_separated_blobs(self, blobs):
        model = NaiveBayesClassifier.fit(blobs, Hyperparams(seed=0))
        assert (model.predict(blobs).labels == blobs.labels).mean() > 0.98

    def test_single_class_degenerates(self):
        m = matrix_from(np.arange(6.0).reshape(3, 2), [0, 0, 0])
        with pytest.warns(DegenerateTrainingWarning):
            model = NaiveBayesClassifier.fit(m, Hyperparams(seed=0))
        assert isinstance(model, ConstantClassifier)
        assert (model.predict(m).labels == 0).all()

    def test_unknown_variant_rejected(self, blobs):
        with pytest.raises(ValueError):
            NaiveBayesClassifier.fit(blobs, Hyperparams(nb_variant="poisson"))


class TestKNN:
    def test_stores_training_rows_verbatim(self, blobs):
        model = KNeighborsClassifier.fit(blobs, Hyperparams(seed=0))
        assert np.array_equal(model.train_values, blobs.values)
        assert np.array_equal(model.train_labels, blobs.labels)

    def test_k1_returns_nearest_label(self):
        x = np.array([[0.0], [1.0], [10.0]])
        y = np.array([-1, 1, 1], dtype=np.int8)
        m = matrix_from(x, y)
        model = KNeighborsClassifier.fit(m, Hyperparams(seed=0, k_neighbors=1))
        q = matrix_from(np.array([[0.4], [0.6], [8.0]]), [1, 1, 1])
        assert model.predict(q).labels.tolist() == [-1, 1, 1]

    def test_k_equal_n_predicts_majority(self):
        x = np.array([[0.0], [1.0], [2.0], [3.0], [4.0]])
        y = np.array([1, 1, 1, -1, -1], dtype=np.int8)
        m = matrix_from(x, y)
        model = KNeighborsClassifier.fit(m, Hyperparams(seed=0, k_neighbors=5))
        q = matrix_from(np.array([[-100.0], [100.0]]), [1, 1])
        assert model.predict(q).labels.tolist() == [1, 1]

    def test_k_clamped_to_train_size(self):
        x = np.array([[0.0], [1.0], [2.0]])
        y = np.array([1, 1, -1], dtype=np.int8)
        m = matrix_from(x, y)
        model = KNeighborsClassifier.fit(m, Hyperparams(seed=0, k_neighbors=50))
        predicted = model.predict(m)
        assert (predicted.labels == 1).all()

    def test_distance_tie_prefers_lower_row_index(self):
        # two training rows at identical positions but different labels
        x = np.array([[1.0], [1.0], [5.0]])
        y = np.array([1, -1, -1], dtype=np.int8)
        m = matrix_from(x, y)
        model = KNeighborsClassifier.fit(m, Hyperparams(seed=0, k_neighbors=1))
        q = matrix_from(np.array([[1.0]]), [1])
        assert model.predict(q).labels.tolist() == [1]

    def test_vote_tie_prefers_earliest_class(self):
        x = np.array([[0.0], [2.0], [10.0], [12.0]])
        y = np.array([-1, 1, -1, 1], dtype=np.int8)
        m = matrix_from(x, y)
        model = KNeighborsClassifier.fit(m, Hyperparams(seed=0, k_neighbors=2))
        # query equidistant groups: nearest two are rows 0 and 1, one vote each
        q = matrix_from(np.array([[1.0]]), [1])
        assert model.predict(q).labels.tolist() == [-1]

    def test_chunked_predict_matches_direct_computation(self):
        rng = np.random.default_rng(3)
        train = matrix_from(
            rng.normal(size=(40, 3)),
            rng.choice([-1, 1], size=40).astype(np.int8),
        )
        test_values = rng.normal(size=(600, 3))  # forces multiple chunks
        test = matrix_from(test_values, np.ones(600, dtype=np.int8))
        model = KNeighborsClassifier.fit(train, Hyperparams(seed=0))
        got = model.predict(test).labels

        scaler_mean = train.values.mean(axis=0)
        scaler_std = train.values.std(axis=0)
        scaler_std[scaler_std == 0] = 1.0
        ref = (train.values - scaler_mean) / scaler_std
        q = (test_values - scaler_mean) / scaler_std
        expected = []
        for row in q:
            d2 = ((ref - row) ** 2).sum(axis=1)
            nearest = np.argsort(d2, kind="stable")[:5]
            votes = train.labels[nearest]
            values, counts = np.unique(votes, return_counts=True)
            expected.append(int(values[counts.argmax()]))
        # np.unique sorts ascending, argmax takes first max: same tie rule
        assert got.tolist() == expected

    def test_scores_rows_sum_to_one(self, d3_synth):
        model = KNeighborsClassifier.fit(d3_synth, Hyperparams(seed=0))
        scores = model.predict(d3_synth).scores
        assert np.allclose(scores.sum(axis=1), 1.0)

    def test_single_class_degenerates(self):
        m = matrix_from(np.arange(4.0).reshape(2, 2), [1, 1])
        with pytest.warns(DegenerateTrainingWarning):
            model = KNeighborsClassifier.fit(m, Hyperparams(seed=0))
        assert isinstance(model, ConstantClassifier)

    def test_invalid_k(self, blobs):
        with pytest.raises(ValueError):
            KNeighborsClassifier.fit(blobs, Hyperparams(k_neighbors=0))
