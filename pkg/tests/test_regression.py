import logging

import numpy as np
import pytest

from hdlearn.exceptions import DimensionMismatchError, InvalidInputError, NotFittedError
from hdlearn.metrics import MetricsCalculator
from hdlearn.models import RegressionModel
from hdlearn.models.regression import RegressionEncoder, binarize_signs


@pytest.fixture(scope="module")
def linear_split(linear):
    return linear.split(test_size=0.2, seed=0)


@pytest.fixture(scope="module")
def linear_model(linear_split):
    X_train, _, y_train, _ = linear_split
    return RegressionModel(dim=4096, k=4, epochs=20, seed=0).fit(X_train, y_train)


class TestEncoder:
    def test_values_are_bounded(self, rng):
        encoder = RegressionEncoder.create(256, 3, seed=1)
        H = encoder.encode_matrix(rng.normal(size=(20, 3)))
        assert H.shape == (20, 256)
        assert np.all(np.abs(H) <= 1.0)

    def test_same_seed_same_features(self):
        a = RegressionEncoder.create(64, 2, seed=9)
        b = RegressionEncoder.create(64, 2, seed=9)
        assert np.array_equal(a.encode([0.3, -0.1]), b.encode([0.3, -0.1]))

    def test_wrong_width(self):
        with pytest.raises(DimensionMismatchError):
            RegressionEncoder.create(64, 2).encode_matrix(np.zeros((1, 3)))


class TestGradient:
    def test_matches_finite_differences(self, rng):
        model = RegressionModel(dim=8, k=2, temperature=1.0)
        model.cluster_models = rng.normal(size=(2, 8))
        model.regressor_models = rng.normal(size=(2, 8))
        h = np.cos(rng.normal(size=8))
        target = 0.7

        def loss():
            return 0.5 * (target - model._predict_scaled(h)) ** 2

        gradient = model.loss_gradient(h, target)
        eps = 1e-6
        numeric = np.zeros_like(gradient)
        for idx in np.ndindex(*gradient.shape):
            original = model.regressor_models[idx]
            model.regressor_models[idx] = original + eps
            upper = loss()
            model.regressor_models[idx] = original - eps
            lower = loss()
            model.regressor_models[idx] = original
            numeric[idx] = (upper - lower) / (2 * eps)
        assert np.linalg.norm(gradient - numeric) / np.linalg.norm(numeric) < 1e-4


class TestFit:
    def test_linear_target_on_held_out_rows(self, linear_model, linear_split):
        _, X_test, _, y_test = linear_split
        assert linear_model.score(X_test, y_test) >= 0.8

    @pytest.mark.slow
    def test_sine_target(self, sine):
        X_train, X_test, y_train, y_test = sine.split(test_size=0.2, seed=0)
        model = RegressionModel(seed=0).fit(X_train, y_train)
        assert MetricsCalculator.rmse(y_test, model.predict_many(X_test)) < 0.2

    def test_confidences_sum_to_one(self, linear_model, linear):
        h = linear_model.encoder.encode(linear.X[0])
        alpha = linear_model.confidences(h)
        assert alpha.shape == (4,)
        assert alpha.sum() == pytest.approx(1.0)
        assert np.all(alpha >= 0)

    def test_zero_learning_rate_predicts_the_mean(self, caplog, linear):
        with caplog.at_level(logging.WARNING):
            model = RegressionModel(dim=256, k=2, learning_rate=0.0, epochs=2).fit(linear.X, linear.y)
        assert "learning_rate is 0" in caplog.text
        assert model.predict_many(linear.X[:5]) == pytest.approx([linear.y.mean()] * 5)

    def test_constant_target(self, linear):
        y = np.full(linear.y.shape, 3.5)
        model = RegressionModel(dim=256, k=2, epochs=2).fit(linear.X, y)
        assert model.target_scale == 1.0
        assert model.predict_many(linear.X[:5]) == pytest.approx([3.5] * 5)

    def test_scale_equivariance(self, linear):
        X, y = linear.X[:200], linear.y[:200]
        base = RegressionModel(dim=512, k=2, epochs=3, seed=2).fit(X, y)
        scaled = RegressionModel(dim=512, k=2, epochs=3, seed=2).fit(X, 10.0 * y + 5.0)
        expected = [10.0 * p + 5.0 for p in base.predict_many(X[:20])]
        assert scaled.predict_many(X[:20]) == pytest.approx(expected, rel=1e-6, abs=1e-6)

    def test_single_cluster(self, linear):
        model = RegressionModel(dim=1024, k=1, epochs=5).fit(linear.X, linear.y)
        assert model.cluster_models.shape == (1, 1024)
        assert model.score(linear.X, linear.y) > 0.5

    def test_same_seed_same_predictions(self, linear):
        a = RegressionModel(dim=256, k=2, epochs=2, seed=3).fit(linear.X, linear.y)
        b = RegressionModel(dim=256, k=2, epochs=2, seed=3).fit(linear.X, linear.y)
        assert a.predict_many(linear.X[:10]) == b.predict_many(linear.X[:10])


class TestQuantized:
    def test_binarize_is_idempotent(self, linear_model):
        first = linear_model.regressor_signs.copy()
        linear_model.binarize()
        assert np.array_equal(linear_model.regressor_signs, first)
        assert set(np.unique(linear_model.cluster_signs)) <= {-1, 1}

    def test_binarize_signs_maps_zero_up(self):
        assert binarize_signs(np.array([-0.5, 0.0, 2.0])).tolist() == [-1, 1, 1]

    def test_quantized_predictions_correlate(self, linear_model, linear_split):
        _, X_test, _, _ = linear_split
        exact = linear_model.predict_many(X_test)
        quantized = linear_model.predict_many(X_test, quantized=True)
        assert MetricsCalculator.pearson(exact, quantized) >= 0.9


class TestValidation:
    def test_negative_learning_rate(self, linear):
        with pytest.raises(InvalidInputError):
            RegressionModel(learning_rate=-0.1).fit(linear.X, linear.y)

    def test_non_positive_temperature(self, linear):
        with pytest.raises(InvalidInputError):
            RegressionModel(temperature=0.0).fit(linear.X, linear.y)

    def test_more_clusters_than_rows(self, linear):
        with pytest.raises(InvalidInputError):
            RegressionModel(k=8).fit(linear.X[:4], linear.y[:4])

    def test_non_finite_target(self, linear):
        y = linear.y.copy()
        y[0] = np.inf
        with pytest.raises(InvalidInputError):
            RegressionModel(dim=64, k=2).fit(linear.X, y)

    def test_predict_before_fit(self):
        with pytest.raises(NotFittedError):
            RegressionModel().predict([0.5])
