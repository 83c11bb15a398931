"""
Quantum Classification Model

The classifier of ``hdlearn.models.classification`` with phase-encoded class
states: each class is the quantum bundle of its members' encodings, and rows
are labelled by the class state with the highest (exact or Hadamard-test
sampled) similarity.
"""

import hashlib
import logging
from typing import List, Optional

import numpy as np

from hdlearn.arithmetic.quantum import (
    EXACT,
    SAMPLED,
    PhaseState,
    qbundle,
    qencode,
    qencode_many,
    qsimilarity,
)
from hdlearn.encoding import DEFAULT_LEVELS
from hdlearn.exceptions import DegenerateStateError, InvalidInputError
from hdlearn.models.classification import ClassificationModel

logger = logging.getLogger(__name__)

DEFAULT_QUANTUM_DIM = 8192


class QuantumClassificationModel(ClassificationModel):
    """Classifier over emulated phase states. ``shots=0`` means exact similarity."""

    kind = 2
    name = "quantum-classification"

    def __init__(
        self,
        dim: int = DEFAULT_QUANTUM_DIM,
        levels: int = DEFAULT_LEVELS,
        retrain_epochs: int = 0,
        seed: int = 0,
        per_feature_ranges: bool = False,
        workers: int = 1,
        shots: int = 0,
    ):
        if retrain_epochs:
            logger.warning("Retraining is not defined for quantum class states; ignoring retrain_epochs")
        if shots < 0:
            raise InvalidInputError(f"shots must be >= 0, got {shots}")
        super().__init__(dim, levels, 0, seed, per_feature_ranges, workers)
        self.shots = shots
        self.class_states: List[Optional[PhaseState]] = []
        self.success_probabilities: List[float] = []

    def config(self):
        settings = super().config()
        settings["shots"] = self.shots
        return settings

    @property
    def mode(self) -> str:
        return SAMPLED if self.shots else EXACT

    def _build_states(self, H: np.ndarray, y_idx: np.ndarray, n_classes: int):
        if H.shape[1] & (H.shape[1] - 1):
            logger.warning(f"Dimension {H.shape[1]} is not a power of two; states are padded with +1")
        self.class_states, self.success_probabilities = [], []
        for c in range(n_classes):
            members = H[y_idx == c]
            if members.shape[0] == 0:
                self.class_states.append(None)
                self.success_probabilities.append(0.0)
                continue
            try:
                state, probability = qbundle(qencode_many(members))
            except DegenerateStateError as e:
                raise DegenerateStateError(f"Class {self.classes[c]!r}: {e}")
            self.class_states.append(state)
            self.success_probabilities.append(probability)
        logger.debug(f"Class bundling success probabilities: {self.success_probabilities}")

    def _fit_encoded(self, H, y_idx, n_classes):
        super()._fit_encoded(H, y_idx, n_classes)
        self._build_states(H, y_idx, n_classes)

    def _fit_encoded_present(self, H, y_idx, n_classes):
        super()._fit_encoded_present(H, y_idx, n_classes)
        self._build_states(H, y_idx, n_classes)

    def _row_rng(self, row: np.ndarray) -> np.random.Generator:
        """Shot generator keyed on the model seed and the row's bits.

        A row draws the same shots alone or anywhere inside a batch.
        """
        digest = hashlib.sha256(np.packbits(row > 0).tobytes()).digest()
        words = np.frombuffer(digest[:8], dtype=np.uint32).tolist()
        return np.random.default_rng(np.random.SeedSequence([self.seed, *words]))

    def _scores(self, H: np.ndarray) -> np.ndarray:
        scores = np.full((H.shape[0], len(self.class_states)), -np.inf)
        for i, row in enumerate(H):
            query = qencode(row)
            rng = self._row_rng(row) if self.shots else None
            for c, state in enumerate(self.class_states):
                if state is not None:
                    scores[i, c] = qsimilarity(state, query, self.mode, max(self.shots, 1), rng)
        return scores

    def retrain(self, X, y, epochs: int):
        raise InvalidInputError("Quantum class states cannot be retrained")

    def to_payload(self):
        meta, arrays = super().to_payload()
        meta["success_probabilities"] = self.success_probabilities
        meta["padding"] = self.class_states[0].padding
        arrays["class_states"] = np.vstack([s.amplitudes for s in self.class_states])
        return meta, arrays

    @classmethod
    def from_payload(cls, meta, arrays):
        model = super().from_payload(meta, arrays)
        amplitudes = arrays["class_states"]
        n_qubits = amplitudes.shape[1].bit_length() - 1
        model.class_states = [
            PhaseState(n_qubits, row, padding=meta["padding"], provenance=("loaded",))
            for row in amplitudes
        ]
        model.success_probabilities = list(meta["success_probabilities"])
        return model
