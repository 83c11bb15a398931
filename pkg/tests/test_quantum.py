import numpy as np
import pytest

from hdlearn.arithmetic import (
    PhaseState,
    bind,
    bundle,
    cosine_similarity,
    normalize,
    permute,
    qbind,
    qbundle,
    qdecode,
    qencode,
    qpermute,
    qpermute_spectral,
    qsimilarity,
    random_hypervector,
)
from hdlearn.exceptions import (
    DegenerateStateError,
    DimensionMismatchError,
    FormError,
    InvalidInputError,
)

D = 1024


@pytest.fixture
def vectors(rng):
    return [random_hypervector(D, rng) for _ in range(5)]


class TestEncoding:
    def test_amplitudes_are_uniform_phases(self, vectors):
        state = qencode(vectors[0])
        assert state.n_qubits == 10
        assert state.norm == pytest.approx(1.0)
        assert np.allclose(state.amplitudes, vectors[0].values / np.sqrt(D))

    def test_decode_inverts_encode(self, vectors):
        assert qdecode(qencode(vectors[1])).equals(vectors[1])

    def test_padding_to_power_of_two(self, rng):
        v = random_hypervector(100, rng)
        state = qencode(v)
        assert state.size == 128
        assert state.padding == 28
        assert np.all(state.amplitudes[100:].real > 0)
        assert qdecode(state).equals(v)

    def test_rejects_non_bipolar(self):
        with pytest.raises(FormError):
            qencode(np.array([1, 0, -1, 1]))

    def test_state_must_be_normalized(self):
        with pytest.raises(InvalidInputError):
            PhaseState(n_qubits=1, amplitudes=np.array([1.0, 1.0]))
        with pytest.raises(DimensionMismatchError):
            PhaseState(n_qubits=2, amplitudes=np.array([1.0, 0.0]))


class TestClassicalAgreement:
    def test_similarity_matches_cosine(self, vectors):
        a, b = vectors[:2]
        assert qsimilarity(qencode(a), qencode(b)) == pytest.approx(cosine_similarity(a, b), abs=1e-12)

    def test_bind_matches(self, vectors):
        a, b = vectors[:2]
        assert np.allclose(qbind(qencode(a), b).amplitudes, qencode(bind(a, b)).amplitudes, atol=1e-12)

    @pytest.mark.parametrize("k", [0, 1, 7, -3, D + 5])
    def test_permute_matches(self, vectors, k):
        a = vectors[0]
        assert np.allclose(qpermute(qencode(a), k).amplitudes, qencode(permute(a, k)).amplitudes, atol=1e-12)

    def test_bundle_decodes_to_majority(self, vectors):
        state, _ = qbundle([qencode(v) for v in vectors])
        assert qdecode(state).equals(normalize(bundle(vectors)))

    def test_bundle_success_probability(self, vectors):
        _, probability = qbundle([qencode(v) for v in vectors])
        total = np.sum([v.values.astype(float) for v in vectors], axis=0)
        expected = np.sum(total ** 2) / (len(vectors) ** 2 * D)
        assert probability == pytest.approx(expected, abs=1e-12)

    def test_bundle_of_one_state_is_itself(self, vectors):
        state = qencode(vectors[0])
        bundled, probability = qbundle([state])
        assert np.allclose(bundled.amplitudes, state.amplitudes)
        assert probability == pytest.approx(1.0)


class TestBasisShift:
    @pytest.mark.parametrize("dim", [2, 16, 64, 256])
    def test_spectral_construction_matches_roll(self, rng, dim):
        state = qencode(random_hypervector(dim, rng))
        for k in (1, 3, dim - 1):
            assert np.allclose(qpermute_spectral(state, k).amplitudes, qpermute(state, k).amplitudes, atol=1e-10)

    def test_provenance_records_steps(self, vectors):
        state = qpermute(qbind(qencode(vectors[0]), vectors[1]), 2)
        assert state.provenance[0].startswith("qencode")
        assert state.provenance[1:] == ("qbind", "qpermute(k=2)")


class TestDegenerateCases:
    def test_cancelling_bundle(self, vectors):
        a = vectors[0]
        with pytest.raises(DegenerateStateError):
            qbundle([qencode(a), qencode(a.negate())])

    def test_empty_bundle(self):
        with pytest.raises(InvalidInputError):
            qbundle([])

    def test_size_mismatch(self, rng):
        small = qencode(random_hypervector(8, rng))
        large = qencode(random_hypervector(16, rng))
        with pytest.raises(DimensionMismatchError):
            qsimilarity(small, large)
        with pytest.raises(DimensionMismatchError):
            qbind(small, random_hypervector(16, rng))

    def test_unknown_mode_and_bad_shots(self, vectors):
        a = qencode(vectors[0])
        with pytest.raises(InvalidInputError):
            qsimilarity(a, a, mode="approximate")
        with pytest.raises(InvalidInputError):
            qsimilarity(a, a, mode="sampled", shots=0)


class TestSampling:
    def test_sampled_estimate_is_close(self, vectors):
        a, b = qencode(vectors[0]), qencode(vectors[1])
        exact = qsimilarity(a, b)
        shots = 1000
        rng = np.random.default_rng(0)
        errors = np.array([
            abs(qsimilarity(a, b, mode="sampled", shots=shots, rng=rng) - exact)
            for _ in range(100)
        ])
        assert np.sum(errors < 4 / np.sqrt(shots)) >= 95

    def test_sampling_is_reproducible(self, vectors):
        a, b = qencode(vectors[0]), qencode(vectors[2])
        first = qsimilarity(a, b, mode="sampled", shots=500, rng=3)
        assert first == qsimilarity(a, b, mode="sampled", shots=500, rng=3)

    def test_identical_states_sample_to_one(self, vectors):
        a = qencode(vectors[0])
        assert qsimilarity(a, a, mode="sampled", shots=100, rng=0) == 1.0
