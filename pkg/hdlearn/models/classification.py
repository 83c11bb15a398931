"""
Classification Model

Supervised HDC classifier: class hypervectors are bundles of the record
encodings of their rows. Includes error-driven retraining, stratified
cross-validation, stepwise feature selection and a grid-based auto-tuner.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.model_selection import LeaveOneOut, StratifiedKFold

from hdlearn.arithmetic.classical import sign_with_ties
from hdlearn.encoding import DEFAULT_LEVELS, FeatureEncoder
from hdlearn.exceptions import InvalidInputError, StratificationError
from hdlearn.metrics import MetricsCalculator
from hdlearn.models.base import HDModel
from hdlearn.vector import ACCUMULATOR_DTYPE, DEFAULT_DIM

logger = logging.getLogger(__name__)

BACKWARD = "backward"
FORWARD = "forward"


@dataclass
class SelectionReport:
    """Outcome of stepwise feature selection."""
    direction: str
    ranked_features: List[str]
    importance: Dict[str, float]
    best_subset: List[str]
    best_score: float
    rounds: List[Dict[str, Any]] = field(default_factory=list)

    def to_rows(self) -> List[Dict[str, Any]]:
        """One row per feature, in ranked order, for delimited export."""
        rank = {name: i + 1 for i, name in enumerate(self.ranked_features)}
        return [
            {
                "feature": name,
                "rank": rank[name],
                "importance": round(self.importance[name], 6),
                "selected": name in self.best_subset,
            }
            for name in self.ranked_features
        ]


@dataclass
class TuningResult:
    """Winner and full score table of an auto-tune sweep."""
    best: Dict[str, Any]
    table: List[Dict[str, Any]]

    def __iter__(self):
        # allows ``best, table = model.auto_tune(...)``
        return iter((self.best, self.table))


def stratified_folds(labels: np.ndarray, folds: int, seed: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Seeded stratified (train, test) index pairs.

    ``folds`` equal to the row count means leave-one-out.
    """
    n_rows = labels.shape[0]
    if folds < 2:
        raise InvalidInputError(f"At least 2 folds are needed, got {folds}")
    if folds > n_rows:
        raise InvalidInputError(f"{folds} folds requested for {n_rows} rows")

    placeholder = np.zeros(n_rows)
    if folds == n_rows:
        return list(LeaveOneOut().split(placeholder))

    counts = np.bincount(labels)
    if counts.min() < folds:
        raise StratificationError(
            f"Class with {counts.min()} row(s) cannot be stratified into {folds} folds"
        )
    splitter = StratifiedKFold(n_splits=folds, shuffle=True, random_state=seed)
    return list(splitter.split(placeholder, labels))


class ClassificationModel(HDModel):
    """HDC classifier over record-encoded feature rows."""

    kind = 1
    name = "classification"

    def __init__(
        self,
        dim: int = DEFAULT_DIM,
        levels: int = DEFAULT_LEVELS,
        retrain_epochs: int = 0,
        seed: int = 0,
        per_feature_ranges: bool = False,
        workers: int = 1,
    ):
        super().__init__(dim, seed)
        self.levels = levels
        self.retrain_epochs = retrain_epochs
        self.per_feature_ranges = per_feature_ranges
        self.workers = workers

        self.encoder: Optional[FeatureEncoder] = None
        self.classes: List[Any] = []
        self.class_accumulators: Optional[np.ndarray] = None
        self.class_vectors: Optional[np.ndarray] = None
        self.retrain_history: List[float] = []

    # ------------------------------------------------------------------
    # configuration helpers
    # ------------------------------------------------------------------

    def config(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "levels": self.levels,
            "retrain_epochs": self.retrain_epochs,
            "seed": self.seed,
            "per_feature_ranges": self.per_feature_ranges,
        }

    def clone(self, **overrides) -> "ClassificationModel":
        """Unfitted model with the same configuration, optionally overridden."""
        settings = self.config()
        settings.update(overrides)
        return type(self)(workers=self.workers, **settings)

    def _map(self, fn: Callable, items: Sequence) -> List:
        # Executor.map keeps item order, so reductions never depend on scheduling
        if self.workers > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                return list(pool.map(fn, items))
        return [fn(item) for item in items]

    @property
    def is_fitted(self) -> bool:
        return self.class_vectors is not None

    # ------------------------------------------------------------------
    # fitting
    # ------------------------------------------------------------------

    def _label_indices(self, y: Sequence) -> Tuple[List[Any], np.ndarray]:
        y = np.asarray(y)
        if y.size == 0:
            raise InvalidInputError("Cannot fit on an empty dataset")
        classes, indices = np.unique(y, return_inverse=True)
        if classes.size < 2:
            raise InvalidInputError(
                f"Classification needs at least 2 distinct labels, got {classes.tolist()}"
            )
        return classes.tolist(), indices.reshape(-1)

    def _refresh_vectors(self):
        self.class_vectors = sign_with_ties(self.class_accumulators, self.seed)

    def _fit_encoded(self, H: np.ndarray, y_idx: np.ndarray, n_classes: int):
        acc = np.zeros((n_classes, H.shape[1]), dtype=ACCUMULATOR_DTYPE)
        for c in range(n_classes):
            members = H[y_idx == c]
            if members.shape[0] == 0:
                raise InvalidInputError(f"Class {self.classes[c]!r} has no rows")
            acc[c] = members.sum(axis=0, dtype=ACCUMULATOR_DTYPE)
        self.class_accumulators = acc
        self._refresh_vectors()

    def fit(self, X, y, feature_names: Optional[Sequence[str]] = None) -> "ClassificationModel":
        """Encode the rows of ``X`` and bundle them per label of ``y``."""
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise InvalidInputError("Training data must be a non-empty 2-D matrix")
        if X.shape[0] != len(y):
            raise InvalidInputError(f"{X.shape[0]} rows but {len(y)} labels")

        self.classes, y_idx = self._label_indices(y)
        self.encoder = FeatureEncoder.fit(
            X,
            feature_names=feature_names,
            dim=self.dim,
            n_levels=self.levels,
            seed=self.seed,
            per_feature_ranges=self.per_feature_ranges,
        )
        H = self.encoder.encode_matrix(X)
        self._fit_encoded(H, y_idx, len(self.classes))
        logger.info(
            f"Fitted {self.name} model on {X.shape[0]} rows, "
            f"{len(self.classes)} classes, D={self.dim}, L={self.levels}"
        )

        if self.retrain_epochs:
            self._retrain_encoded(H, y_idx, self.retrain_epochs)
        return self

    # ------------------------------------------------------------------
    # prediction
    # ------------------------------------------------------------------

    def _scores(self, H: np.ndarray) -> np.ndarray:
        # bipolar rows and class vectors both have norm sqrt(D): cosine = dot / D
        dots = H.astype(np.int32) @ self.class_vectors.T.astype(np.int32)
        return dots / float(self.class_vectors.shape[1])

    def similarities(self, X) -> np.ndarray:
        """Cosine similarity of every row to every class vector, ``(n, classes)``."""
        self._require_fitted()
        return self._scores(self.encoder.encode_matrix(X))

    def predict(self, x) -> Tuple[Any, List[float]]:
        """Label of one raw record plus its similarity to each class (class order)."""
        scores = self.similarities(np.asarray(x, dtype=np.float64).reshape(1, -1))[0]
        # argmax returns the first maximum: ties go to the earlier class
        return self.classes[int(np.argmax(scores))], scores.tolist()

    def predict_many(self, X) -> List[Any]:
        scores = self.similarities(X)
        return [self.classes[i] for i in np.argmax(scores, axis=1)]

    def score(self, X, y) -> float:
        return MetricsCalculator.accuracy(y, self.predict_many(X))

    # ------------------------------------------------------------------
    # retraining
    # ------------------------------------------------------------------

    def _encoded_accuracy(self, H: np.ndarray, y_idx: np.ndarray) -> Tuple[float, np.ndarray]:
        predicted = np.argmax(self._scores(H), axis=1)
        return float(np.mean(predicted == y_idx)), predicted

    def _retrain_encoded(self, H: np.ndarray, y_idx: np.ndarray, epochs: int):
        accuracy, predicted = self._encoded_accuracy(H, y_idx)
        best_accuracy, best_epoch = accuracy, 0
        best_state = self.class_accumulators.copy()
        self.retrain_history = [accuracy]

        for epoch in range(1, epochs + 1):
            wrong = predicted != y_idx
            if not np.any(wrong):
                logger.debug(f"Retraining epoch {epoch}: no misclassified rows")
                break
            np.add.at(self.class_accumulators, y_idx[wrong], H[wrong])
            np.subtract.at(self.class_accumulators, predicted[wrong], H[wrong])
            self._refresh_vectors()

            accuracy, predicted = self._encoded_accuracy(H, y_idx)
            self.retrain_history.append(accuracy)
            logger.debug(f"Retraining epoch {epoch}: {int(wrong.sum())} updates, accuracy {accuracy:.4f}")
            if accuracy > best_accuracy:
                best_accuracy, best_epoch = accuracy, epoch
                best_state = self.class_accumulators.copy()

        self.class_accumulators = best_state
        self._refresh_vectors()
        logger.info(f"Retraining kept epoch {best_epoch} (training accuracy {best_accuracy:.4f})")

    def retrain(self, X, y, epochs: int) -> "ClassificationModel":
        """Error-driven refinement; keeps the best epoch's snapshot."""
        self._require_fitted()
        if epochs < 0:
            raise InvalidInputError(f"epochs must be >= 0, got {epochs}")
        if epochs == 0:
            return self
        index = {label: i for i, label in enumerate(self.classes)}
        labels = np.asarray(y).tolist()
        unseen = sorted({str(label) for label in labels if label not in index})
        if unseen:
            raise InvalidInputError(f"Labels not seen during fit: {', '.join(unseen)}")
        y_idx = np.array([index[label] for label in labels])
        self._retrain_encoded(self.encoder.encode_matrix(X), y_idx, epochs)
        return self

    # ------------------------------------------------------------------
    # cross-validation
    # ------------------------------------------------------------------

    def cross_validate(self, X, y, folds: int = 5, seed: Optional[int] = None,
                       feature_names: Optional[Sequence[str]] = None) -> List[float]:
        """Per-fold accuracy of fresh models fit (and retrained) on the other folds."""
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] != len(y):
            raise InvalidInputError(f"{X.shape[0]} rows but {len(y)} labels")
        classes, y_idx = self._label_indices(y)
        splits = stratified_folds(y_idx, folds, self.seed if seed is None else seed)

        def run_fold(split):
            train, test = split
            model = self.clone()._fit_fold(X[train], y_idx[train], classes, feature_names)
            accuracy, _ = model._encoded_accuracy(model.encoder.encode_matrix(X[test]), y_idx[test])
            return accuracy

        scores = self._map(run_fold, splits)
        summary = MetricsCalculator.summarize(scores, name="cv_accuracy")
        logger.info(f"{len(splits)}-fold cross-validation: mean accuracy {summary.mean:.4f}")
        return scores

    def _fit_fold(self, X: np.ndarray, y_idx: np.ndarray, classes: List[Any],
                  feature_names: Optional[Sequence[str]] = None) -> "ClassificationModel":
        """Fit on a fold whose rows may not cover every class of ``classes``."""
        self.classes = list(classes)
        self.encoder = FeatureEncoder.fit(
            X,
            feature_names=feature_names,
            dim=self.dim,
            n_levels=self.levels,
            seed=self.seed,
            per_feature_ranges=self.per_feature_ranges,
        )
        H = self.encoder.encode_matrix(X)
        self._fit_encoded_present(H, y_idx, len(self.classes))
        if self.retrain_epochs:
            self._retrain_encoded(H, y_idx, self.retrain_epochs)
        return self

    def _encoded_cv_score(self, H: np.ndarray, y_idx: np.ndarray, splits) -> float:
        n_classes = int(y_idx.max()) + 1
        scores = []
        for train, test in splits:
            model = self.clone()
            model.classes = list(range(n_classes))
            model._fit_encoded_present(H[train], y_idx[train], n_classes)
            if self.retrain_epochs:
                model._retrain_encoded(H[train], y_idx[train], self.retrain_epochs)
            accuracy, _ = model._encoded_accuracy(H[test], y_idx[test])
            scores.append(accuracy)
        return float(np.mean(scores))

    def _fit_encoded_present(self, H: np.ndarray, y_idx: np.ndarray, n_classes: int):
        # leave-one-out folds may hold no row of a class; such a class keeps a
        # zero accumulator and never wins against a populated one
        acc = np.zeros((n_classes, H.shape[1]), dtype=ACCUMULATOR_DTYPE)
        np.add.at(acc, y_idx, H)
        self.class_accumulators = acc
        self._refresh_vectors()
        empty = ~np.any(acc, axis=1)
        if np.any(empty):
            self.class_vectors = self.class_vectors.copy()
            self.class_vectors[empty] = 0

    # ------------------------------------------------------------------
    # feature selection
    # ------------------------------------------------------------------

    def stepwise_feature_selection(
        self,
        X,
        y,
        direction: str = BACKWARD,
        threshold: float = 0.0,
        folds: int = 5,
        seed: Optional[int] = None,
        feature_names: Optional[Sequence[str]] = None,
    ) -> "SelectionReport":
        """Backward elimination or forward addition scored by mean CV accuracy.

        Rows are encoded once with a fixed encoder; dropping a feature omits
        its bind term from every record.
        """
        if direction not in (BACKWARD, FORWARD):
            raise InvalidInputError(f"Unknown selection direction: {direction}")
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[1] < 2:
            raise InvalidInputError("Feature selection needs at least 2 features")

        if self.is_fitted and self.encoder.n_features == X.shape[1]:
            encoder = self.encoder
        else:
            encoder = FeatureEncoder.fit(
                X, feature_names=feature_names, dim=self.dim, n_levels=self.levels,
                seed=self.seed, per_feature_ranges=self.per_feature_ranges,
            )
        names = list(feature_names) if feature_names is not None else list(encoder.feature_names)
        _, y_idx = self._label_indices(y)
        splits = stratified_folds(y_idx, folds, self.seed if seed is None else seed)

        def evaluate(subset: Tuple[int, ...]) -> float:
            return self._encoded_cv_score(encoder.encode_matrix(X, subset), y_idx, splits)

        if direction == BACKWARD:
            result = self._backward(evaluate, X.shape[1], threshold)
        else:
            baseline = float(np.mean([
                np.mean(y_idx[test] == np.bincount(y_idx[train]).argmax()) for train, test in splits
            ]))
            result = self._forward(evaluate, X.shape[1], threshold, baseline)

        order, records, rounds = result
        importance = {}
        for f in range(X.shape[1]):
            # the candidate round with the highest starting score, earliest on ties
            start, _, delta = max(records[f], key=lambda r: (r[0], -r[1]))
            importance[names[f]] = delta

        best_subset, best_score = min(rounds, key=lambda r: (-r[1], len(r[0])))
        report = SelectionReport(
            direction=direction,
            ranked_features=[names[f] for f in order],
            importance=importance,
            best_subset=[names[f] for f in best_subset],
            best_score=best_score,
            rounds=[{"subset": [names[f] for f in s], "score": score} for s, score in rounds],
        )
        logger.info(
            f"{direction.capitalize()} selection kept {len(report.best_subset)}/{X.shape[1]} "
            f"features (CV accuracy {best_score:.4f})"
        )
        return report

    def _backward(self, evaluate, n_features: int, threshold: float):
        current = list(range(n_features))
        start_score = evaluate(tuple(current))
        best_so_far = start_score
        rounds = [(tuple(current), start_score)]
        records: Dict[int, List[Tuple[float, int, float]]] = {f: [] for f in current}
        eliminated: List[int] = []

        round_no = 0
        while len(current) > 1:
            round_no += 1
            candidates = list(current)
            scores = self._map(
                lambda f: evaluate(tuple(g for g in current if g != f)), candidates
            )
            for f, s in zip(candidates, scores):
                records[f].append((start_score, round_no, start_score - s))

            pick = int(np.argmax(scores))
            if scores[pick] < best_so_far - threshold:
                logger.debug(f"Backward round {round_no}: stopping at score {scores[pick]:.4f}")
                break
            removed = candidates[pick]
            current.remove(removed)
            eliminated.append(removed)
            start_score = scores[pick]
            best_so_far = max(best_so_far, start_score)
            rounds.append((tuple(current), start_score))
            logger.debug(f"Backward round {round_no}: removed feature {removed} (score {start_score:.4f})")

        return eliminated + current, records, rounds

    def _forward(self, evaluate, n_features: int, threshold: float, baseline: float):
        current: List[int] = []
        remaining = list(range(n_features))
        start_score = baseline
        best_so_far = -np.inf
        rounds: List[Tuple[Tuple[int, ...], float]] = []
        records: Dict[int, List[Tuple[float, int, float]]] = {f: [] for f in remaining}

        round_no = 0
        while remaining:
            round_no += 1
            candidates = list(remaining)
            scores = self._map(lambda f: evaluate(tuple(sorted(current + [f]))), candidates)
            for f, s in zip(candidates, scores):
                records[f].append((start_score, round_no, s - start_score))

            pick = int(np.argmax(scores))
            if scores[pick] < best_so_far - threshold:
                logger.debug(f"Forward round {round_no}: stopping at score {scores[pick]:.4f}")
                break
            added = candidates[pick]
            remaining.remove(added)
            current.append(added)
            start_score = scores[pick]
            best_so_far = max(best_so_far, start_score)
            rounds.append((tuple(sorted(current)), start_score))

        return current + remaining, records, rounds

    # ------------------------------------------------------------------
    # hyperparameter sweep
    # ------------------------------------------------------------------

    def auto_tune(
        self,
        X,
        y,
        dims: Iterable[int] = (DEFAULT_DIM,),
        levels: Iterable[int] = (DEFAULT_LEVELS,),
        retrain_epochs: Iterable[int] = (0,),
        folds: int = 5,
        seed: Optional[int] = None,
        feature_names: Optional[Sequence[str]] = None,
    ) -> TuningResult:
        """Exhaustive grid sweep scored by mean CV accuracy.

        Ties prefer the smaller dimension, then fewer levels, then fewer epochs.
        """
        grid = list(itertools.product(list(dims), list(levels), list(retrain_epochs)))
        if not grid:
            raise InvalidInputError("The tuning grid is empty")
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] != len(y):
            raise InvalidInputError(f"{X.shape[0]} rows but {len(y)} labels")
        classes, y_idx = self._label_indices(y)
        splits = stratified_folds(y_idx, folds, self.seed if seed is None else seed)

        def evaluate(cell):
            dim, n_levels, epochs = cell
            candidate = self.clone(dim=dim, levels=n_levels, retrain_epochs=epochs)
            scores = []
            for train, test in splits:
                model = candidate.clone()._fit_fold(X[train], y_idx[train], classes, feature_names)
                accuracy, _ = model._encoded_accuracy(model.encoder.encode_matrix(X[test]), y_idx[test])
                scores.append(accuracy)
            summary = MetricsCalculator.summarize(scores)
            return {
                "dim": dim,
                "levels": n_levels,
                "retrain_epochs": epochs,
                "score": summary.mean,
                "std": summary.std,
            }

        table = self._map(evaluate, grid)
        ranked = MetricsCalculator.rank_table(table, "score", ("dim", "levels", "retrain_epochs"))
        best = dict(ranked[0])
        logger.info(
            f"Auto-tune over {len(grid)} cells: best D={best['dim']}, L={best['levels']}, "
            f"epochs={best['retrain_epochs']} (CV accuracy {best['score']:.4f})"
        )
        return TuningResult(best=best, table=table)

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------

    def to_payload(self):
        self._require_fitted()
        encoder_meta, arrays = self.encoder.to_payload()
        arrays["class_accumulators"] = self.class_accumulators
        meta = {"config": self.config(), "classes": self.classes, "encoder": encoder_meta}
        return meta, arrays

    @classmethod
    def from_payload(cls, meta, arrays):
        model = cls(**meta["config"])
        model.encoder = FeatureEncoder.from_payload(meta["encoder"], arrays)
        model.classes = list(meta["classes"])
        model.class_accumulators = arrays["class_accumulators"]
        model._refresh_vectors()
        return model
