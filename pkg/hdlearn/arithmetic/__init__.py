"""
Arithmetic Package

Classical VSA operations over bipolar hypervectors and their quantum
(statevector-emulated) counterparts.
"""

from hdlearn.arithmetic.classical import (
    bind,
    bundle,
    cosine_matrix,
    cosine_similarity,
    hamming_distance,
    normalize,
    permute,
    random_hypervector,
    sign_with_ties,
    tie_pattern,
)
from hdlearn.arithmetic.quantum import (
    PhaseState,
    qbind,
    qbundle,
    qdecode,
    qencode,
    qpermute,
    qpermute_spectral,
    qsimilarity,
)

__all__ = [
    "bind",
    "bundle",
    "cosine_matrix",
    "cosine_similarity",
    "hamming_distance",
    "normalize",
    "permute",
    "random_hypervector",
    "sign_with_ties",
    "tie_pattern",
    "PhaseState",
    "qbind",
    "qbundle",
    "qdecode",
    "qencode",
    "qpermute",
    "qpermute_spectral",
    "qsimilarity",
]
