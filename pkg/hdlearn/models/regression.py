"""
Regression Model

Continuous targets are predicted by ``k`` (cluster, regressor) pairs of real
hypervectors. Rows are lifted with random Fourier features; the softmax of
the row's similarity to every cluster model weights the regressor outputs.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import softmax

from hdlearn.exceptions import DimensionMismatchError, InvalidInputError, NotFittedError
from hdlearn.metrics import MetricsCalculator
from hdlearn.models.base import HDModel
from hdlearn.models.clustering import ClusteringModel

logger = logging.getLogger(__name__)

DEFAULT_REGRESSION_DIM = 4096
CLUSTER_RATE = 0.1


def binarize_signs(values: np.ndarray) -> np.ndarray:
    """Sign quantization with zero mapped to +1."""
    return np.where(values >= 0, 1, -1).astype(np.int8)


@dataclass(eq=False)
class RegressionEncoder:
    """Random Fourier feature map ``h_i = cos(bases_i . x + biases_i)``."""
    bases: np.ndarray
    biases: np.ndarray
    seed: int = 0

    @classmethod
    def create(cls, dim: int, n_features: int, seed: int = 0) -> "RegressionEncoder":
        if dim < 2:
            raise InvalidInputError(f"Encoder dimension must be at least 2, got {dim}")
        if n_features < 1:
            raise InvalidInputError("The encoder needs at least one input feature")
        rng = np.random.default_rng(seed)
        bases = rng.standard_normal((dim, n_features))
        biases = rng.uniform(0.0, 2.0 * np.pi, size=dim)
        return cls(bases=bases, biases=biases, seed=seed)

    @property
    def dim(self) -> int:
        return self.bases.shape[0]

    @property
    def n_features(self) -> int:
        return self.bases.shape[1]

    def encode_matrix(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[np.newaxis, :]
        if X.shape[1] != self.n_features:
            raise DimensionMismatchError(f"Expected {self.n_features} features, got {X.shape[1]}")
        if not np.all(np.isfinite(X)):
            raise InvalidInputError("Regression inputs must be finite")
        return np.cos(X @ self.bases.T + self.biases)

    def encode(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise InvalidInputError("encode expects a single row")
        return self.encode_matrix(x)[0]


class RegressionModel(HDModel):
    """Mixture of hypervector regressors gated by cluster similarity."""

    kind = 4
    name = "regression"

    def __init__(
        self,
        dim: int = DEFAULT_REGRESSION_DIM,
        k: int = 8,
        learning_rate: float = 0.02,
        epochs: int = 50,
        temperature: float = 0.01,
        quantized: bool = False,
        cluster_sample: int = 1000,
        cluster_iterations: int = 20,
        seed: int = 0,
    ):
        super().__init__(dim, seed)
        self.k = k
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.temperature = temperature
        self.quantized = quantized
        self.cluster_sample = cluster_sample
        self.cluster_iterations = cluster_iterations

        self.encoder: Optional[RegressionEncoder] = None
        self.cluster_models: Optional[np.ndarray] = None
        self.regressor_models: Optional[np.ndarray] = None
        self.target_mean = 0.0
        self.target_scale = 1.0

        self.cluster_signs: Optional[np.ndarray] = None
        self.regressor_signs: Optional[np.ndarray] = None
        self.regressor_norms: Optional[np.ndarray] = None

    def config(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "k": self.k,
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "temperature": self.temperature,
            "quantized": self.quantized,
            "cluster_sample": self.cluster_sample,
            "cluster_iterations": self.cluster_iterations,
            "seed": self.seed,
        }

    @property
    def is_fitted(self) -> bool:
        return self.regressor_models is not None

    @property
    def is_binarized(self) -> bool:
        return self.regressor_signs is not None

    # ------------------------------------------------------------------
    # scoring primitives
    # ------------------------------------------------------------------

    def confidences(self, h: np.ndarray) -> np.ndarray:
        """Softmax weights of one encoded row over the cluster models."""
        norms = np.linalg.norm(self.cluster_models, axis=1) * np.linalg.norm(h)
        similarities = (self.cluster_models @ h) / np.where(norms == 0, 1.0, norms)
        return softmax(similarities / self.temperature)

    def _predict_scaled(self, h: np.ndarray) -> float:
        alpha = self.confidences(h)
        return float(alpha @ (self.regressor_models @ h)) / self.dim

    def _predict_quantized_scaled(self, h: np.ndarray) -> float:
        signs = binarize_signs(h).astype(np.int32)
        # 1 - 2 * hamming / D == dot / D for sign vectors
        cluster_sim = (self.cluster_signs.astype(np.int32) @ signs) / self.dim
        alpha = softmax(cluster_sim / self.temperature)
        regressor_sim = (self.regressor_signs.astype(np.int32) @ signs) / self.dim
        dots = regressor_sim * self.regressor_norms * np.linalg.norm(h)
        return float(alpha @ dots) / self.dim

    def loss_gradient(self, h: np.ndarray, y_scaled: float) -> np.ndarray:
        """Gradient of ``e^2 / 2`` with respect to each regressor, confidences held fixed."""
        alpha = self.confidences(h)
        error = y_scaled - self._predict_scaled(h)
        return -error * alpha[:, np.newaxis] * h[np.newaxis, :] / self.dim

    # ------------------------------------------------------------------
    # fitting
    # ------------------------------------------------------------------

    def _initial_clusters(self, H: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        size = min(self.cluster_sample, H.shape[0])
        sample = binarize_signs(H[rng.choice(H.shape[0], size=size, replace=False)])
        if self.k == 1:
            return binarize_signs(sample.sum(axis=0, dtype=np.int64)).astype(np.float64)[np.newaxis, :]
        if size < self.k:
            raise InvalidInputError(f"cluster_sample {size} is smaller than k={self.k}")
        clusters = ClusteringModel(
            k=self.k, max_iterations=self.cluster_iterations, dim=self.dim, seed=self.seed
        ).fit(sample)
        return clusters.centroids.astype(np.float64)

    def binarize(self) -> "RegressionModel":
        """Store sign copies of every model plus the regressor norms."""
        self._require_fitted()
        self.cluster_signs = binarize_signs(self.cluster_models)
        self.regressor_signs = binarize_signs(self.regressor_models)
        self.regressor_norms = np.linalg.norm(self.regressor_models, axis=1)
        return self

    def fit(self, X, y) -> "RegressionModel":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, np.newaxis]
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if X.shape[0] != y.shape[0]:
            raise InvalidInputError(f"{X.shape[0]} rows but {y.shape[0]} targets")
        if self.k < 1 or X.shape[0] < self.k:
            raise InvalidInputError(f"k={self.k} needs at least as many rows, got {X.shape[0]}")
        if not np.all(np.isfinite(y)):
            raise InvalidInputError("Regression targets must be finite")
        if self.learning_rate < 0:
            raise InvalidInputError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.temperature <= 0:
            raise InvalidInputError(f"temperature must be positive, got {self.temperature}")
        if self.learning_rate == 0:
            logger.warning("learning_rate is 0: the model will always predict the target mean")

        encoder_seq, cluster_seq, order_seq = np.random.SeedSequence(self.seed).spawn(3)
        self.encoder = RegressionEncoder.create(
            self.dim, X.shape[1], seed=int(encoder_seq.generate_state(1)[0])
        )
        H = self.encoder.encode_matrix(X)

        self.target_mean = float(y.mean())
        spread = float(y.std())
        self.target_scale = spread if spread > 0 else 1.0
        y_scaled = (y - self.target_mean) / self.target_scale

        self.cluster_models = self._initial_clusters(H, np.random.default_rng(cluster_seq))
        self.regressor_models = np.zeros((self.k, self.dim))
        order_rng = np.random.default_rng(order_seq)

        for epoch in range(1, self.epochs + 1):
            squared_error = 0.0
            for i in order_rng.permutation(H.shape[0]):
                h = H[i]
                alpha = self.confidences(h)
                error = y_scaled[i] - float(alpha @ (self.regressor_models @ h)) / self.dim
                squared_error += error * error
                self.regressor_models += self.learning_rate * error * alpha[:, np.newaxis] * h
                winner = int(np.argmax(alpha))
                self.cluster_models[winner] += CLUSTER_RATE * (h - self.cluster_models[winner])
            self.binarize()
            logger.debug(f"Epoch {epoch}: training MSE (scaled) {squared_error / H.shape[0]:.6f}")

        self.binarize()
        logger.info(
            f"Fitted {self.name} model on {X.shape[0]} rows: D={self.dim}, k={self.k}, "
            f"lr={self.learning_rate}, epochs={self.epochs}"
        )
        return self

    # ------------------------------------------------------------------
    # prediction
    # ------------------------------------------------------------------

    def predict_encoded(self, h: np.ndarray, quantized: Optional[bool] = None) -> float:
        """Prediction for one already-encoded row, in target units."""
        self._require_fitted()
        quantized = self.quantized if quantized is None else quantized
        if quantized:
            if not self.is_binarized:
                raise NotFittedError("Quantized prediction needs binarized models; call binarize()")
            scaled = self._predict_quantized_scaled(h)
        else:
            scaled = self._predict_scaled(h)
        return scaled * self.target_scale + self.target_mean

    def predict(self, x, quantized: Optional[bool] = None) -> float:
        self._require_fitted()
        return self.predict_encoded(self.encoder.encode(np.atleast_1d(x)), quantized)

    def predict_many(self, X, quantized: Optional[bool] = None) -> List[float]:
        self._require_fitted()
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, np.newaxis]
        H = self.encoder.encode_matrix(X)
        return [self.predict_encoded(h, quantized) for h in H]

    def score(self, X, y, quantized: Optional[bool] = None) -> float:
        """Coefficient of determination on ``(X, y)``."""
        return MetricsCalculator.r2(y, self.predict_many(X, quantized))

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def to_payload(self) -> Tuple[Dict[str, Any], Dict[str, np.ndarray]]:
        self._require_fitted()
        meta = {
            "config": self.config(),
            "target_mean": self.target_mean,
            "target_scale": self.target_scale,
            "encoder_seed": self.encoder.seed,
        }
        arrays = {
            "encoder.bases": self.encoder.bases,
            "encoder.biases": self.encoder.biases,
            "cluster_models": self.cluster_models,
            "regressor_models": self.regressor_models,
            "cluster_signs": self.cluster_signs,
            "regressor_signs": self.regressor_signs,
            "regressor_norms": self.regressor_norms,
        }
        return meta, arrays

    @classmethod
    def from_payload(cls, meta, arrays) -> "RegressionModel":
        model = cls(**meta["config"])
        model.encoder = RegressionEncoder(
            bases=arrays["encoder.bases"], biases=arrays["encoder.biases"], seed=meta["encoder_seed"]
        )
        model.cluster_models = arrays["cluster_models"]
        model.regressor_models = arrays["regressor_models"]
        model.cluster_signs = arrays["cluster_signs"]
        model.regressor_signs = arrays["regressor_signs"]
        model.regressor_norms = arrays["regressor_norms"]
        model.target_mean = meta["target_mean"]
        model.target_scale = meta["target_scale"]
        return model
