import logging

import numpy as np
import pytest

from hdlearn.exceptions import InvalidInputError
from hdlearn.models import ClassificationModel, QuantumClassificationModel


@pytest.fixture(scope="module")
def exact_model(blob_split):
    X_train, _, y_train, _ = blob_split
    return QuantumClassificationModel(seed=0).fit(X_train, y_train)


def test_exact_states_agree_with_classical(exact_model, blob_split):
    X_train, X_test, y_train, _ = blob_split
    classical = ClassificationModel(dim=exact_model.dim, seed=0).fit(X_train, y_train)
    agreement = np.mean(
        np.array(exact_model.predict_many(X_test)) == np.array(classical.predict_many(X_test))
    )
    assert agreement >= 0.98


def test_success_probabilities(exact_model):
    assert len(exact_model.success_probabilities) == 2
    assert all(0.0 < p <= 1.0 for p in exact_model.success_probabilities)


def test_one_row_per_class_recovers_itself():
    X = np.array([[0.0, 1.0, 2.0], [3.0, 2.0, 1.0]])
    model = QuantumClassificationModel(dim=1024).fit(X, ["a", "b"])
    scores = model.similarities(X)
    assert scores[0, 0] == pytest.approx(1.0)
    assert scores[1, 1] == pytest.approx(1.0)
    assert model.predict_many(X) == ["a", "b"]


def test_sampled_predictions_track_exact(exact_model, blob_split):
    X_train, X_test, y_train, _ = blob_split
    sampled = QuantumClassificationModel(seed=0, shots=10000).fit(X_train, y_train)
    assert sampled.mode == "sampled"
    agreement = np.mean(np.array(sampled.predict_many(X_test)) == np.array(exact_model.predict_many(X_test)))
    assert agreement >= 0.98


def test_sampled_predictions_are_reproducible(blob_split):
    X_train, X_test, y_train, _ = blob_split
    model = QuantumClassificationModel(dim=1024, shots=200).fit(X_train, y_train)
    assert np.array_equal(model.similarities(X_test), model.similarities(X_test))


def test_sampled_scores_do_not_depend_on_batch_position(blob_split):
    X_train, X_test, y_train, _ = blob_split
    model = QuantumClassificationModel(dim=1024, shots=200).fit(X_train, y_train)
    batch = model.similarities(X_test[:6])
    for i in (0, 3, 5):
        assert np.array_equal(model.similarities(X_test[i:i + 1])[0], batch[i])
    assert np.array_equal(model.similarities(X_test[5::-1])[::-1], batch)


def test_leave_one_out_with_a_single_row_class():
    X = np.array([[0.0, 0.1], [0.2, 0.0], [0.1, 0.3], [5.0, 5.1]])
    scores = QuantumClassificationModel(dim=1024, levels=4).cross_validate(X, ["a", "a", "a", "b"], folds=4)
    assert len(scores) == 4
    assert set(scores) <= {0.0, 1.0}


def test_retraining_is_disabled(caplog, blob_split):
    X_train, _, y_train, _ = blob_split
    with caplog.at_level(logging.WARNING):
        model = QuantumClassificationModel(dim=1024, retrain_epochs=3)
    assert "Retraining is not defined" in caplog.text
    assert model.retrain_epochs == 0
    model.fit(X_train, y_train)
    with pytest.raises(InvalidInputError):
        model.retrain(X_train, y_train, epochs=1)


def test_padding_warning_for_other_dimensions(caplog, blob_split):
    X_train, X_test, y_train, _ = blob_split
    with caplog.at_level(logging.WARNING):
        model = QuantumClassificationModel(dim=1000).fit(X_train, y_train)
    assert "not a power of two" in caplog.text
    assert model.class_states[0].size == 1024
    assert model.class_states[0].padding == 24
    assert len(model.predict_many(X_test)) == X_test.shape[0]


def test_negative_shots():
    with pytest.raises(InvalidInputError):
        QuantumClassificationModel(shots=-1)


def test_cross_validation_runs(blobs):
    scores = QuantumClassificationModel(dim=1024).cross_validate(blobs.X, blobs.y, folds=3, seed=0)
    assert np.mean(scores) >= 0.9
