"""
Classical VSA arithmetic

Binding, bundling, normalization, permutation and similarity over bipolar
hypervectors. The ``Vector``-level functions validate their operands; the
array helpers below them are what the models call in their inner loops.
"""

from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from hdlearn.exceptions import (
    DimensionMismatchError,
    FormError,
    InvalidDimensionError,
    InvalidInputError,
)
from hdlearn.vector import (
    ACCUMULATOR,
    ACCUMULATOR_DTYPE,
    BIPOLAR,
    BIPOLAR_DTYPE,
    Vector,
)

SeedLike = Union[int, np.random.Generator, None]


# ---------------------------------------------------------------------------
# Array helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _cached_tie_pattern(dim: int, tie_seed: int) -> np.ndarray:
    rng = np.random.default_rng(tie_seed)
    pattern = rng.choice(np.array([-1, 1], dtype=BIPOLAR_DTYPE), size=dim)
    pattern.setflags(write=False)
    return pattern


def tie_pattern(dim: int, tie_seed: int) -> np.ndarray:
    """The per-position coin used to resolve zero components.

    The same ``(dim, tie_seed)`` pair always yields the same pattern.
    """
    return _cached_tie_pattern(int(dim), int(tie_seed))


def sign_with_ties(acc: np.ndarray, tie_seed: int) -> np.ndarray:
    """Sign of an accumulator array (1-D or 2-D, components on the last axis).

    Zero components take the value of the tie pattern at their position.
    """
    acc = np.asarray(acc)
    out = np.sign(acc).astype(BIPOLAR_DTYPE)
    zeros = out == 0
    if np.any(zeros):
        pattern = np.broadcast_to(tie_pattern(acc.shape[-1], tie_seed), acc.shape)
        out[zeros] = pattern[zeros]
    return out


def cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarity between the rows of ``a`` and ``b``."""
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    b = np.atleast_2d(np.asarray(b, dtype=np.float64))
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(f"Dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    norms_a = np.linalg.norm(a, axis=1)
    norms_b = np.linalg.norm(b, axis=1)
    if np.any(norms_a == 0) or np.any(norms_b == 0):
        raise InvalidInputError("Cosine similarity is undefined for zero-norm vectors")
    return (a @ b.T) / np.outer(norms_a, norms_b)


def resolve_rng(rng: SeedLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# ---------------------------------------------------------------------------
# Vector operations
# ---------------------------------------------------------------------------

def _check_same_dim(a: Vector, b: Vector):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"Dimension mismatch: {a.dim} vs {b.dim}")


def _check_bipolar(*vectors: Vector):
    for vector in vectors:
        if not vector.is_bipolar:
            raise FormError(f"{vector!r} is not bipolar")


def random_hypervector(dim: int, rng: SeedLike = None, name: Optional[str] = None) -> Vector:
    """Draw a bipolar vector with independent fair +/-1 components."""
    if dim < 2:
        raise InvalidDimensionError(f"Hypervectors need at least 2 dimensions, got {dim}")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    generator = resolve_rng(rng)
    values = generator.choice(np.array([-1, 1], dtype=BIPOLAR_DTYPE), size=dim)
    return Vector(dim=dim, values=values, form=BIPOLAR, name=name, seed=seed)


def bind(a: Vector, b: Vector) -> Vector:
    """Component-wise product. Commutative and self-inverse."""
    _check_same_dim(a, b)
    _check_bipolar(a, b)
    return Vector(a.dim, a.values * b.values, BIPOLAR)


def bundle(vectors: Sequence[Vector]) -> Vector:
    """Component-wise integer sum, returned in accumulator form."""
    vectors = list(vectors)
    if not vectors:
        raise InvalidInputError("Cannot bundle an empty list of vectors")

    dim = vectors[0].dim
    forms = {v.form for v in vectors}
    if len(forms) > 1:
        raise FormError("Cannot mix bipolar and accumulator vectors in one bundle")
    for vector in vectors[1:]:
        if vector.dim != dim:
            raise DimensionMismatchError(f"Dimension mismatch: {dim} vs {vector.dim}")

    stacked = np.stack([v.values for v in vectors]).astype(ACCUMULATOR_DTYPE)
    return Vector(dim, stacked.sum(axis=0, dtype=ACCUMULATOR_DTYPE), ACCUMULATOR)


def normalize(acc: Vector, tie_seed: int = 0) -> Vector:
    """Sign of an accumulator; zeros resolved by the seeded tie pattern."""
    if acc.form != ACCUMULATOR:
        raise FormError(f"normalize expects an accumulator, got {acc!r}")
    return Vector(acc.dim, sign_with_ties(acc.values, tie_seed), BIPOLAR, acc.name)


def permute(a: Vector, k: int = 1) -> Vector:
    """Cyclic rotation: component ``i`` moves to position ``(i + k) mod D``."""
    return Vector(a.dim, np.roll(a.values, k), a.form, a.name)


def cosine_similarity(a: Vector, b: Vector) -> float:
    _check_same_dim(a, b)
    return float(cosine_matrix(a.values, b.values)[0, 0])


def hamming_distance(a: Vector, b: Vector) -> int:
    """Number of positions where two bipolar vectors disagree."""
    _check_same_dim(a, b)
    _check_bipolar(a, b)
    return int(np.count_nonzero(a.values != b.values))

