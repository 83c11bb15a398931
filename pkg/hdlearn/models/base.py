"""
Base Model Abstract Class

Defines the interface that all hyperdimensional models implement so the
runner and the model-file format can treat them uniformly.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

import numpy as np

from hdlearn.exceptions import NotFittedError


class HDModel(ABC):
    """Abstract base class for hdlearn models."""

    # Model-file kind byte; see hdlearn.persistence
    kind: int = 0
    name: str = "model"

    def __init__(self, dim: int, seed: int):
        self.dim = dim
        self.seed = seed

    @property
    @abstractmethod
    def is_fitted(self) -> bool:
        """Whether the model holds trained state."""
        pass

    @abstractmethod
    def to_payload(self) -> Tuple[Dict[str, Any], Dict[str, np.ndarray]]:
        """Split the model into JSON metadata and named arrays."""
        pass

    @classmethod
    @abstractmethod
    def from_payload(cls, meta: Dict[str, Any], arrays: Dict[str, np.ndarray]) -> "HDModel":
        """Rebuild a model saved by ``to_payload``."""
        pass

    def config(self) -> Dict[str, Any]:
        """Resolved hyperparameters, printed by the CLI and stored in model files."""
        return {"dim": self.dim, "seed": self.seed}

    def _require_fitted(self):
        if not self.is_fitted:
            raise NotFittedError(f"This {self.name} model is not fitted yet")

    def __repr__(self) -> str:
        settings = ", ".join(f"{k}={v}" for k, v in self.config().items())
        return f"{type(self).__name__}({settings})"
