"""Named collection of hypervectors sharing one dimensionality."""

from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from hdlearn.arithmetic.classical import cosine_matrix
from hdlearn.exceptions import DimensionMismatchError, InvalidInputError
from hdlearn.vector import DEFAULT_DIM, Vector


class Space:
    """A dictionary of hypervectors with tags.

    Every member has the space's dimension, names are unique and tags only
    ever reference current members.
    """

    def __init__(self, dim: int = DEFAULT_DIM):
        self.dim = dim
        self._members: Dict[str, Vector] = {}
        self._tags: Dict[str, Set[str]] = {}

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, name: str) -> bool:
        return name in self._members

    def names(self) -> List[str]:
        return list(self._members)

    def insert(self, vector: Vector, tags: Optional[Iterable[str]] = None):
        if not vector.name:
            raise InvalidInputError("Only named vectors can be inserted into a space")
        if vector.dim != self.dim:
            raise DimensionMismatchError(
                f"Space has dimension {self.dim}, vector '{vector.name}' has {vector.dim}"
            )
        if vector.name in self._members:
            raise InvalidInputError(f"Vector '{vector.name}' already exists")

        self._members[vector.name] = vector
        for tag in tags or []:
            self.add_tag(vector.name, tag)

    def get(self, name: str) -> Vector:
        try:
            return self._members[name]
        except KeyError:
            raise InvalidInputError(f"No vector named '{name}'")

    def remove(self, name: str) -> Vector:
        vector = self.get(name)
        del self._members[name]
        for members in self._tags.values():
            members.discard(name)
        self._tags = {tag: members for tag, members in self._tags.items() if members}
        return vector

    def add_tag(self, name: str, tag: str):
        self.get(name)
        self._tags.setdefault(tag, set()).add(name)

    def remove_tag(self, name: str, tag: str):
        members = self._tags.get(tag)
        if members:
            members.discard(name)
            if not members:
                del self._tags[tag]

    def names_with_tag(self, tag: str) -> Set[str]:
        return set(self._tags.get(tag, set()))

    def tags_of(self, name: str) -> Set[str]:
        return {tag for tag, members in self._tags.items() if name in members}

    def find_all(self, vector: Vector) -> List[Tuple[str, float]]:
        """All members ranked by cosine similarity to ``vector`` (highest first)."""
        if vector.dim != self.dim:
            raise DimensionMismatchError(f"Space has dimension {self.dim}, got {vector.dim}")
        if not self._members:
            return []

        names = list(self._members)
        matrix = np.vstack([self._members[n].values for n in names])
        scores = cosine_matrix(vector.values, matrix)[0]
        # stable sort keeps insertion order among equal scores
        order = np.argsort(-scores, kind="stable")
        return [(names[i], float(scores[i])) for i in order]

    def find(self, vector: Vector) -> Tuple[str, float]:
        """The most similar member and its similarity."""
        ranked = self.find_all(vector)
        if not ranked:
            raise InvalidInputError("The space is empty")
        return ranked[0]
