"""
Models Package

Hyperdimensional learning models sharing the ``HDModel`` interface.
"""

from hdlearn.models.base import HDModel
from hdlearn.models.classification import ClassificationModel, SelectionReport, TuningResult
from hdlearn.models.clustering import ClusteringModel
from hdlearn.models.graph import GraphModel, quantize_weights
from hdlearn.models.quantum_classification import QuantumClassificationModel
from hdlearn.models.regression import RegressionEncoder, RegressionModel

MODEL_KINDS = {
    model.kind: model
    for model in (
        ClassificationModel,
        QuantumClassificationModel,
        ClusteringModel,
        RegressionModel,
        GraphModel,
    )
}

__all__ = [
    "HDModel",
    "ClassificationModel",
    "SelectionReport",
    "TuningResult",
    "QuantumClassificationModel",
    "ClusteringModel",
    "RegressionEncoder",
    "RegressionModel",
    "GraphModel",
    "quantize_weights",
    "MODEL_KINDS",
]
