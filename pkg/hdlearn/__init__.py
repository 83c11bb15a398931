"""
hdlearn - Hyperdimensional Computing toolkit

Bipolar hypervector arithmetic, record encoding and HDC models for
classification, clustering, regression and graph encoding, plus a
statevector emulation of quantum HDC.
"""

__version__ = "0.1.0"

from hdlearn.arithmetic import (
    bind,
    bundle,
    cosine_similarity,
    hamming_distance,
    normalize,
    permute,
    random_hypervector,
)
from hdlearn.benchmarks import StandardBenchmarks
from hdlearn.dataset import Dataset, load_dataset, load_edge_list
from hdlearn.encoding import FeatureEncoder, LevelEncoding, build_levels, quantize
from hdlearn.models import (
    ClassificationModel,
    ClusteringModel,
    GraphModel,
    QuantumClassificationModel,
    RegressionEncoder,
    RegressionModel,
)
from hdlearn.persistence import load_model, save_model
from hdlearn.space import Space
from hdlearn.vector import Vector

__all__ = [
    "Vector",
    "Space",
    "random_hypervector",
    "bind",
    "bundle",
    "normalize",
    "permute",
    "cosine_similarity",
    "hamming_distance",
    "LevelEncoding",
    "build_levels",
    "quantize",
    "FeatureEncoder",
    "ClassificationModel",
    "QuantumClassificationModel",
    "ClusteringModel",
    "RegressionEncoder",
    "RegressionModel",
    "GraphModel",
    "Dataset",
    "load_dataset",
    "load_edge_list",
    "save_model",
    "load_model",
    "StandardBenchmarks",
]
