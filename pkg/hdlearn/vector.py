"""Hypervector type."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from hdlearn.exceptions import FormError, InvalidDimensionError

BIPOLAR = "bipolar"
ACCUMULATOR = "accumulator"

DEFAULT_DIM = 10000

# Bipolar components fit in int8; accumulators are int32, exact for bundles
# of up to 2**31 - 1 bipolar constituents.
BIPOLAR_DTYPE = np.int8
ACCUMULATOR_DTYPE = np.int32


@dataclass(eq=False)
class Vector:
    """A dense hypervector.

    ``values`` holds ``dim`` signed integers. In bipolar form every entry is
    -1 or +1; in accumulator form entries are integer sums of bundled
    constituents. ``seed`` records the RNG seed the vector was drawn from,
    when it was drawn directly.
    """
    dim: int
    values: np.ndarray
    form: str = BIPOLAR
    name: Optional[str] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidDimensionError(f"Dimension must be positive, got {self.dim}")
        if self.form not in (BIPOLAR, ACCUMULATOR):
            raise FormError(f"Unknown vector form: {self.form}")

        dtype = BIPOLAR_DTYPE if self.form == BIPOLAR else ACCUMULATOR_DTYPE
        values = np.asarray(self.values)
        if values.ndim != 1 or values.shape[0] != self.dim:
            raise InvalidDimensionError(
                f"Expected {self.dim} components, got shape {values.shape}"
            )
        if self.form == BIPOLAR and not np.all(np.abs(values) == 1):
            raise FormError("Bipolar vectors may only contain -1 and +1")

        self.values = values.astype(dtype, copy=False)

    @classmethod
    def bipolar(cls, values, name: Optional[str] = None, seed: Optional[int] = None) -> "Vector":
        values = np.asarray(values)
        return cls(dim=values.shape[-1], values=values, form=BIPOLAR, name=name, seed=seed)

    @classmethod
    def accumulator(cls, values, name: Optional[str] = None) -> "Vector":
        values = np.asarray(values)
        return cls(dim=values.shape[-1], values=values, form=ACCUMULATOR, name=name)

    @property
    def is_bipolar(self) -> bool:
        return self.form == BIPOLAR

    def __len__(self) -> int:
        return self.dim

    def negate(self) -> "Vector":
        return Vector(self.dim, -self.values, self.form, self.name)

    def copy(self) -> "Vector":
        return Vector(self.dim, self.values.copy(), self.form, self.name, self.seed)

    def equals(self, other: "Vector") -> bool:
        """Component-wise equality (names and seeds are ignored)."""
        return self.dim == other.dim and bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        label = f" '{self.name}'" if self.name else ""
        return f"<Vector{label} dim={self.dim} form={self.form}>"
