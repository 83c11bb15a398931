"""
Level vectors and record encoding of numeric feature rows.

A row ``x`` is encoded as ``normalize(sum_f bind(ID_f, level(q(x_f))))`` where
``ID_f`` is a random identifier per feature and ``level`` looks up the level
vector of the quantized value.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from hdlearn.arithmetic.classical import SeedLike, resolve_rng, sign_with_ties
from hdlearn.exceptions import (
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidInputError,
)
from hdlearn.vector import ACCUMULATOR_DTYPE, BIPOLAR_DTYPE, DEFAULT_DIM, Vector

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = 10
ENCODE_BATCH_ROWS = 1024


@dataclass(eq=False)
class LevelEncoding:
    """``L`` level vectors covering ``[range_min, range_max]``.

    Consecutive levels differ in ``floor(D / (2(L-1)))`` positions that were
    never flipped before, so similarity to level 0 decreases strictly.
    """
    levels: np.ndarray
    range_min: float
    range_max: float

    @property
    def n_levels(self) -> int:
        return self.levels.shape[0]

    @property
    def dim(self) -> int:
        return self.levels.shape[1]

    def vector(self, index: int) -> Vector:
        return Vector.bipolar(self.levels[index], name=f"level_{index}")


def build_levels(
    n_levels: int,
    dim: int,
    value_range: Tuple[float, float],
    rng: SeedLike = None,
) -> LevelEncoding:
    if n_levels < 2:
        raise InvalidInputError(f"At least 2 levels are needed, got {n_levels}")
    if dim < 2:
        raise InvalidDimensionError(f"Hypervectors need at least 2 dimensions, got {dim}")
    range_min, range_max = float(value_range[0]), float(value_range[1])
    if not (np.isfinite(range_min) and np.isfinite(range_max)) or range_min >= range_max:
        raise InvalidInputError(f"Degenerate level range [{range_min}, {range_max}]")

    flips_per_level = dim // (2 * (n_levels - 1))
    if flips_per_level == 0:
        # every level would equal the first
        raise InvalidInputError(
            f"{n_levels} levels need at least {2 * (n_levels - 1)} dimensions, got {dim}"
        )

    generator = resolve_rng(rng)
    order = generator.permutation(dim)

    levels = np.empty((n_levels, dim), dtype=BIPOLAR_DTYPE)
    levels[0] = generator.choice(np.array([-1, 1], dtype=BIPOLAR_DTYPE), size=dim)
    for i in range(1, n_levels):
        levels[i] = levels[i - 1]
        flipped = order[(i - 1) * flips_per_level: i * flips_per_level]
        levels[i, flipped] *= -1

    return LevelEncoding(levels=levels, range_min=range_min, range_max=range_max)


def bin_index(values, range_min, range_max, n_levels: int) -> np.ndarray:
    """Half-open binning of clamped values into ``n_levels`` bins."""
    values = np.asarray(values, dtype=np.float64)
    range_min = np.asarray(range_min, dtype=np.float64)
    range_max = np.asarray(range_max, dtype=np.float64)
    clamped = np.clip(values, range_min, range_max)
    index = np.floor((clamped - range_min) / (range_max - range_min) * n_levels)
    return np.clip(index, 0, n_levels - 1).astype(np.int64)


def quantize(value: float, encoding: LevelEncoding) -> int:
    """Level index of ``value``; out-of-range values are clamped."""
    return int(bin_index(value, encoding.range_min, encoding.range_max, encoding.n_levels))


def _check_finite(X: np.ndarray):
    if not np.all(np.isfinite(X)):
        bad = np.argwhere(~np.isfinite(X))[0]
        raise InvalidInputError(f"Non-finite value at row {bad[0]}, column {bad[-1]}")


@dataclass(eq=False)
class FeatureEncoder:
    """Record encoder: one random identifier vector per feature plus shared levels.

    With ``feature_ranges`` set, each feature is quantized against its own
    ``[min, max]`` instead of the level encoding's global range.
    """
    feature_ids: np.ndarray
    level_encoding: LevelEncoding
    feature_names: List[str]
    tie_seed: int = 0
    feature_ranges: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.feature_ids.shape[0] != len(self.feature_names):
            raise InvalidInputError(
                f"{self.feature_ids.shape[0]} feature ids for {len(self.feature_names)} names"
            )
        if self.feature_ids.shape[1] != self.level_encoding.dim:
            raise DimensionMismatchError("Feature ids and levels differ in dimension")

    @classmethod
    def fit(
        cls,
        X,
        feature_names: Optional[Sequence[str]] = None,
        dim: int = DEFAULT_DIM,
        n_levels: int = DEFAULT_LEVELS,
        seed: int = 0,
        per_feature_ranges: bool = False,
    ) -> "FeatureEncoder":
        """Build an encoder whose value ranges cover the rows of ``X``."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.size == 0:
            raise InvalidInputError("Cannot fit an encoder on an empty dataset")
        _check_finite(X)
        n_features = X.shape[1]
        names = list(feature_names) if feature_names is not None else [
            f"feature_{i}" for i in range(n_features)
        ]

        level_seq, id_seq = np.random.SeedSequence(seed).spawn(2)
        feature_ranges = None
        if per_feature_ranges:
            lows, highs = X.min(axis=0), X.max(axis=0)
            constant = lows == highs
            if np.any(constant):
                logger.debug(f"{int(constant.sum())} constant feature(s) get a unit-width range")
            lows = np.where(constant, lows - 0.5, lows)
            highs = np.where(constant, highs + 0.5, highs)
            feature_ranges = np.column_stack([lows, highs])
            value_range = (float(lows.min()), float(highs.max()))
        else:
            value_range = (float(X.min()), float(X.max()))

        levels = build_levels(n_levels, dim, value_range, np.random.default_rng(level_seq))
        id_rng = np.random.default_rng(id_seq)
        feature_ids = id_rng.choice(
            np.array([-1, 1], dtype=BIPOLAR_DTYPE), size=(n_features, dim)
        )
        return cls(
            feature_ids=feature_ids,
            level_encoding=levels,
            feature_names=names,
            tie_seed=seed,
            feature_ranges=feature_ranges,
        )

    @property
    def dim(self) -> int:
        return self.level_encoding.dim

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def quantize_matrix(self, X: np.ndarray) -> np.ndarray:
        if self.feature_ranges is not None:
            lows, highs = self.feature_ranges[:, 0], self.feature_ranges[:, 1]
        else:
            lows, highs = self.level_encoding.range_min, self.level_encoding.range_max
        return bin_index(X, lows, highs, self.level_encoding.n_levels)

    def _validate(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[np.newaxis, :]
        if X.shape[1] != self.n_features:
            raise InvalidInputError(
                f"Expected {self.n_features} features, got {X.shape[1]}"
            )
        _check_finite(X)
        return X

    def _feature_subset(self, features: Optional[Iterable[int]]) -> List[int]:
        if features is None:
            return list(range(self.n_features))
        subset = sorted(set(int(f) for f in features))
        if not subset:
            raise InvalidInputError("At least one feature is needed to encode a record")
        if subset[0] < 0 or subset[-1] >= self.n_features:
            raise InvalidInputError(f"Feature index out of range: {subset}")
        return subset

    def accumulate(self, X, features: Optional[Iterable[int]] = None) -> np.ndarray:
        """Un-normalized encodings: per row, the integer sum of the bound feature terms."""
        X = self._validate(X)
        subset = self._feature_subset(features)
        indices = self.quantize_matrix(X)
        levels = self.level_encoding.levels

        acc = np.zeros((X.shape[0], self.dim), dtype=ACCUMULATOR_DTYPE)
        for f in subset:
            acc += self.feature_ids[f] * levels[indices[:, f]]
        return acc

    def encode_matrix(self, X, features: Optional[Iterable[int]] = None) -> np.ndarray:
        """Bipolar encodings of every row of ``X`` as an ``(n, D)`` int8 array.

        ``features`` restricts the bundle to a subset of feature indices; the
        bind terms of the other features are omitted.
        """
        X = self._validate(X)
        out = np.empty((X.shape[0], self.dim), dtype=BIPOLAR_DTYPE)
        for start in range(0, X.shape[0], ENCODE_BATCH_ROWS):
            block = X[start:start + ENCODE_BATCH_ROWS]
            out[start:start + block.shape[0]] = sign_with_ties(
                self.accumulate(block, features), self.tie_seed
            )
        return out

    def encode_record(self, x, features: Optional[Iterable[int]] = None) -> Vector:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise InvalidInputError("encode_record expects a single row")
        return Vector.bipolar(self.encode_matrix(x, features)[0])

    def to_payload(self, prefix: str = "encoder") -> Tuple[dict, dict]:
        meta = {
            "feature_names": list(self.feature_names),
            "tie_seed": int(self.tie_seed),
            "range_min": self.level_encoding.range_min,
            "range_max": self.level_encoding.range_max,
            "per_feature_ranges": self.feature_ranges is not None,
        }
        arrays = {
            f"{prefix}.feature_ids": self.feature_ids,
            f"{prefix}.levels": self.level_encoding.levels,
        }
        if self.feature_ranges is not None:
            arrays[f"{prefix}.feature_ranges"] = self.feature_ranges
        return meta, arrays

    @classmethod
    def from_payload(cls, meta: dict, arrays: dict, prefix: str = "encoder") -> "FeatureEncoder":
        levels = LevelEncoding(
            levels=arrays[f"{prefix}.levels"],
            range_min=meta["range_min"],
            range_max=meta["range_max"],
        )
        return cls(
            feature_ids=arrays[f"{prefix}.feature_ids"],
            level_encoding=levels,
            feature_names=list(meta["feature_names"]),
            tie_seed=meta["tie_seed"],
            feature_ranges=arrays.get(f"{prefix}.feature_ranges") if meta["per_feature_ranges"] else None,
        )
