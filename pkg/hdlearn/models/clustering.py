"""
Clustering Model

k-means in hyperdimensional space: points go to the centroid with the
highest cosine similarity and each centroid is the normalized bundle of its
members. Iteration stops once the assignments stop changing.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hdlearn.arithmetic.classical import sign_with_ties
from hdlearn.encoding import DEFAULT_LEVELS, FeatureEncoder
from hdlearn.exceptions import DimensionMismatchError, FormError, InvalidInputError
from hdlearn.models.base import HDModel
from hdlearn.vector import ACCUMULATOR_DTYPE, BIPOLAR_DTYPE, DEFAULT_DIM, Vector

logger = logging.getLogger(__name__)

Points = Union[np.ndarray, Sequence[Vector]]


def as_bipolar_matrix(points: Points) -> np.ndarray:
    """Stack bipolar points (vectors or array rows) into an ``(n, D)`` int8 array."""
    if isinstance(points, np.ndarray):
        matrix = np.atleast_2d(points)
    else:
        points = list(points)
        if not points:
            raise InvalidInputError("No points given")
        dims = {p.dim for p in points}
        if len(dims) > 1:
            raise DimensionMismatchError(f"Points have mixed dimensions: {sorted(dims)}")
        matrix = np.vstack([p.values for p in points])
    if not np.all(np.abs(matrix) == 1):
        raise FormError("Clustering expects bipolar (+1/-1) points")
    return matrix.astype(BIPOLAR_DTYPE, copy=False)


class ClusteringModel(HDModel):
    """k-means over bipolar hypervectors, optionally with an attached record encoder."""

    kind = 3
    name = "clustering"

    def __init__(
        self,
        k: int = 3,
        max_iterations: int = 100,
        dim: int = DEFAULT_DIM,
        levels: int = DEFAULT_LEVELS,
        seed: int = 0,
        per_feature_ranges: bool = False,
    ):
        super().__init__(dim, seed)
        self.k = k
        self.max_iterations = max_iterations
        self.levels = levels
        self.per_feature_ranges = per_feature_ranges

        self.encoder: Optional[FeatureEncoder] = None
        self.centroids: Optional[np.ndarray] = None
        self.assignments: Optional[np.ndarray] = None
        self.reseeded: Optional[np.ndarray] = None
        self.iterations_run = 0
        self.converged = False

    def config(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "max_iterations": self.max_iterations,
            "dim": self.dim,
            "levels": self.levels,
            "seed": self.seed,
            "per_feature_ranges": self.per_feature_ranges,
        }

    @property
    def is_fitted(self) -> bool:
        return self.centroids is not None

    # ------------------------------------------------------------------
    # k-means steps
    # ------------------------------------------------------------------

    @staticmethod
    def _similarities(H: np.ndarray, centroids: np.ndarray) -> np.ndarray:
        dots = H.astype(np.int32) @ centroids.T.astype(np.int32)
        return dots / float(H.shape[1])

    def _initial_centroids(self, H: np.ndarray) -> np.ndarray:
        """Farthest-first seeding from a random first point."""
        rng = np.random.default_rng(self.seed)
        chosen = [int(rng.integers(H.shape[0]))]
        closest = self._similarities(H, H[chosen])[:, 0]
        while len(chosen) < self.k:
            candidates = closest.copy()
            candidates[chosen] = np.inf
            pick = int(np.argmin(candidates))
            chosen.append(pick)
            closest = np.maximum(closest, self._similarities(H, H[[pick]])[:, 0])
        logger.debug(f"Initial centroids: points {chosen}")
        return H[chosen].copy()

    def assign(self, H: np.ndarray, centroids: Optional[np.ndarray] = None) -> np.ndarray:
        """Index of the most similar centroid per row; ties go to the lower index."""
        centroids = self.centroids if centroids is None else centroids
        return np.argmax(self._similarities(H, centroids), axis=1)

    def update_centroids(self, H: np.ndarray, assignments: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Normalized member bundles; empty clusters are reseeded.

        Returns the new centroids and a flag per cluster marking reseeds.
        """
        acc = np.zeros((self.k, H.shape[1]), dtype=ACCUMULATOR_DTYPE)
        np.add.at(acc, assignments, H)
        counts = np.bincount(assignments, minlength=self.k)
        centroids = sign_with_ties(acc, self.seed)
        reseeded = counts == 0

        filled = list(np.flatnonzero(~reseeded))
        for j in np.flatnonzero(reseeded):
            # the point least covered by any current centroid
            coverage = self._similarities(H, centroids[filled]).max(axis=1)
            point = int(np.argmin(coverage))
            centroids[j] = H[point]
            filled.append(j)
            logger.warning(f"Cluster {j} is empty; reseeded with point {point}")
        return centroids, reseeded

    # ------------------------------------------------------------------
    # fitting
    # ------------------------------------------------------------------

    def fit(self, points: Points) -> "ClusteringModel":
        """Cluster encoded bipolar points."""
        H = as_bipolar_matrix(points)
        if self.k < 2:
            raise InvalidInputError(f"k must be at least 2, got {self.k}")
        if H.shape[0] < self.k:
            raise InvalidInputError(f"{H.shape[0]} points cannot form {self.k} clusters")
        if self.max_iterations < 0:
            raise InvalidInputError("max_iterations must be >= 0")
        self.dim = H.shape[1]

        self.centroids = self._initial_centroids(H)
        self.reseeded = np.zeros(self.k, dtype=bool)
        assignments = self.assign(H)
        self.iterations_run = 0
        self.converged = False

        for iteration in range(1, self.max_iterations + 1):
            self.centroids, self.reseeded = self.update_centroids(H, assignments)
            updated = self.assign(H)
            self.iterations_run = iteration
            changed = int(np.count_nonzero(updated != assignments))
            logger.debug(f"Iteration {iteration}: {changed} assignment(s) changed")
            assignments = updated
            if changed == 0:
                self.converged = True
                break

        self.assignments = assignments
        logger.info(
            f"k-means with k={self.k} on {H.shape[0]} points: "
            f"{'converged' if self.converged else 'stopped'} after {self.iterations_run} iteration(s)"
        )
        return self

    def fit_records(self, X, feature_names: Optional[Sequence[str]] = None) -> "ClusteringModel":
        """Encode raw feature rows and cluster them; the encoder is kept for prediction."""
        self.encoder = FeatureEncoder.fit(
            X,
            feature_names=feature_names,
            dim=self.dim,
            n_levels=self.levels,
            seed=self.seed,
            per_feature_ranges=self.per_feature_ranges,
        )
        return self.fit(self.encoder.encode_matrix(X))

    # ------------------------------------------------------------------
    # prediction
    # ------------------------------------------------------------------

    def predict_many(self, points: Points) -> np.ndarray:
        self._require_fitted()
        H = as_bipolar_matrix(points)
        if H.shape[1] != self.centroids.shape[1]:
            raise DimensionMismatchError(
                f"Model has dimension {self.centroids.shape[1]}, points have {H.shape[1]}"
            )
        return self.assign(H)

    def predict(self, point: Union[Vector, np.ndarray]) -> int:
        if isinstance(point, Vector):
            point = point.values
        return int(self.predict_many(np.asarray(point)[np.newaxis, :])[0])

    def predict_records(self, X) -> List[int]:
        self._require_fitted()
        if self.encoder is None:
            raise InvalidInputError("This clustering model was fitted on encoded points, not records")
        return self.predict_many(self.encoder.encode_matrix(X)).tolist()

    def predict_record(self, x) -> int:
        return self.predict_records(np.asarray(x, dtype=np.float64).reshape(1, -1))[0]

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def to_payload(self):
        self._require_fitted()
        meta = {
            "config": self.config(),
            "iterations_run": self.iterations_run,
            "converged": self.converged,
            "encoder": None,
        }
        arrays = {
            "centroids": self.centroids,
            "assignments": self.assignments.astype(np.int64),
            "reseeded": self.reseeded.astype(np.int8),
        }
        if self.encoder is not None:
            encoder_meta, encoder_arrays = self.encoder.to_payload()
            meta["encoder"] = encoder_meta
            arrays.update(encoder_arrays)
        return meta, arrays

    @classmethod
    def from_payload(cls, meta, arrays):
        model = cls(**meta["config"])
        model.centroids = arrays["centroids"]
        model.assignments = arrays["assignments"]
        model.reseeded = arrays["reseeded"].astype(bool)
        model.iterations_run = meta["iterations_run"]
        model.converged = meta["converged"]
        if meta["encoder"] is not None:
            model.encoder = FeatureEncoder.from_payload(meta["encoder"], arrays)
        return model
