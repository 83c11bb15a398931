"""
Quantum HDC arithmetic, emulated on dense statevectors.

Bipolar hypervectors are phase-encoded into uniform superpositions
(amplitude ``v_j / sqrt(D)``). Binding is a diagonal +/-1 phase oracle,
bundling an LCU average followed by renormalization, permutation a cyclic
shift of the computational basis, and similarity the real part of the
inner product, either exactly or through Hadamard-test sampling.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from hdlearn.arithmetic.classical import SeedLike, resolve_rng
from hdlearn.exceptions import (
    DegenerateStateError,
    DimensionMismatchError,
    FormError,
    InvalidInputError,
)
from hdlearn.vector import BIPOLAR_DTYPE, Vector

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
CANCELLATION_TOLERANCE = 1e-12

EXACT = "exact"
SAMPLED = "sampled"


@dataclass(eq=False)
class PhaseState:
    """A unit-norm statevector over ``n_qubits`` qubits."""
    n_qubits: int
    amplitudes: np.ndarray
    padding: int = 0
    provenance: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (2 ** self.n_qubits,):
            raise DimensionMismatchError(
                f"{self.n_qubits} qubits need {2 ** self.n_qubits} amplitudes, "
                f"got {self.amplitudes.shape}"
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidInputError(f"State is not normalized (norm={norm})")

    @property
    def size(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def _derive(self, amplitudes: np.ndarray, step: str) -> "PhaseState":
        return PhaseState(self.n_qubits, amplitudes, self.padding, self.provenance + (step,))


def _pad_to_power_of_two(values: np.ndarray) -> Tuple[np.ndarray, int]:
    dim = values.shape[0]
    size = 1 << max(0, (dim - 1).bit_length())
    padding = size - dim
    if padding:
        values = np.concatenate([values, np.ones(padding, dtype=values.dtype)])
    return values, padding


def _as_bipolar(v: Union[Vector, np.ndarray]) -> np.ndarray:
    if isinstance(v, Vector):
        if not v.is_bipolar:
            raise FormError(f"{v!r} is not bipolar")
        return v.values
    values = np.asarray(v)
    if not np.all(np.abs(values) == 1):
        raise FormError("Phase encoding needs a bipolar vector")
    return values.astype(BIPOLAR_DTYPE, copy=False)


def qencode(v: Union[Vector, np.ndarray]) -> PhaseState:
    """Map a bipolar vector onto the relative phases of a uniform superposition.

    Dimensions that are not a power of two are padded with +1 components.
    """
    values = _as_bipolar(v)
    padded, padding = _pad_to_power_of_two(values)
    if padding:
        logger.debug(
            f"Padding dimension {values.shape[0]} with {padding} (+1) components "
            f"to fill {padded.shape[0]} amplitudes"
        )
    size = padded.shape[0]
    amplitudes = padded.astype(np.complex128) / np.sqrt(size)
    return PhaseState(
        n_qubits=size.bit_length() - 1,
        amplitudes=amplitudes,
        padding=padding,
        provenance=(f"qencode(dim={values.shape[0]},padding={padding})",),
    )


def qdecode(state: PhaseState) -> Vector:
    """Read the phases back as a bipolar vector, dropping the padding."""
    signs = np.where(state.amplitudes.real >= 0, 1, -1).astype(BIPOLAR_DTYPE)
    if state.padding:
        signs = signs[: state.size - state.padding]
    return Vector.bipolar(signs)


def qbind(state: PhaseState, b: Union[Vector, np.ndarray]) -> PhaseState:
    """Apply the diagonal phase oracle ``diag(b)``."""
    values, _ = _pad_to_power_of_two(_as_bipolar(b))
    if values.shape[0] != state.size:
        raise DimensionMismatchError(
            f"Oracle of size {values.shape[0]} does not match state of size {state.size}"
        )
    return state._derive(state.amplitudes * values, "qbind")


def qbundle(states: Sequence[PhaseState]) -> Tuple[PhaseState, float]:
    """LCU average of ``states`` with amplitude amplification emulated by renormalization.

    Returns the bundled state and the post-selection success probability
    ``||raw||**2`` of the averaging step.
    """
    states = list(states)
    if not states:
        raise InvalidInputError("Cannot bundle an empty list of states")
    size = states[0].size
    for state in states[1:]:
        if state.size != size:
            raise DimensionMismatchError(f"State size mismatch: {size} vs {state.size}")

    raw = np.mean([s.amplitudes for s in states], axis=0)
    raw_norm = np.linalg.norm(raw)
    if raw_norm < CANCELLATION_TOLERANCE:
        raise DegenerateStateError("Bundled states cancel out (destructive interference)")

    first = states[0]
    bundled = PhaseState(
        n_qubits=first.n_qubits,
        amplitudes=raw / raw_norm,
        padding=first.padding,
        provenance=(f"qbundle(m={len(states)})",),
    )
    return bundled, float(raw_norm ** 2)


def qpermute(state: PhaseState, k: int = 1) -> PhaseState:
    """Cyclic shift of the computational basis: index ``i`` moves to ``(i + k) mod 2**n``."""
    return state._derive(np.roll(state.amplitudes, k), f"qpermute(k={k})")


def qpermute_spectral(state: PhaseState, k: int = 1) -> PhaseState:
    """The same shift built as inverse-QFT . diag(exp(2*pi*i*k*j/N)) . QFT."""
    size = state.size
    # numpy's inverse FFT carries the +i sign convention of the QFT
    spectrum = np.fft.ifft(state.amplitudes, norm="ortho")
    phases = np.exp(2j * np.pi * k * np.arange(size) / size)
    shifted = np.fft.fft(spectrum * phases, norm="ortho")
    return state._derive(shifted, f"qpermute_spectral(k={k})")


def qsimilarity(
    a: PhaseState,
    b: PhaseState,
    mode: str = EXACT,
    shots: int = 1024,
    rng: SeedLike = None,
) -> float:
    """Real part of ``<a|b>``.

    ``sampled`` mode emulates the Hadamard test: ``shots`` Bernoulli draws with
    P(0) = (1 + Re<a|b>) / 2, returned as ``2 * count0 / shots - 1``.
    """
    if a.size != b.size:
        raise DimensionMismatchError(f"State size mismatch: {a.size} vs {b.size}")
    overlap = float(np.vdot(a.amplitudes, b.amplitudes).real)
    if mode == EXACT:
        return overlap
    if mode != SAMPLED:
        raise InvalidInputError(f"Unknown similarity mode: {mode}")
    if shots < 1:
        raise InvalidInputError(f"Sampled similarity needs at least one shot, got {shots}")

    p_zero = min(1.0, max(0.0, (1.0 + overlap) / 2.0))
    count_zero = resolve_rng(rng).binomial(shots, p_zero)
    return 2.0 * count_zero / shots - 1.0


def qencode_many(rows: np.ndarray) -> List[PhaseState]:
    return [qencode(row) for row in np.atleast_2d(rows)]
