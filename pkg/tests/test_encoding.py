import numpy as np
import pytest
from scipy import stats

from hdlearn.arithmetic import cosine_similarity
from hdlearn.arithmetic.classical import cosine_matrix
from hdlearn.encoding import FeatureEncoder, bin_index, build_levels, quantize
from hdlearn.exceptions import InvalidDimensionError, InvalidInputError

D = 10000


class TestLevels:
    @pytest.mark.parametrize("n_levels", [2, 10, 100])
    def test_similarity_decreases_from_level_zero(self, n_levels):
        levels = build_levels(n_levels, D, (0.0, 1.0), 5)
        sims = cosine_matrix(levels.levels[:1], levels.levels)[0]
        assert np.all(np.diff(sims) < 0)
        assert abs(sims[-1]) < 0.05

    def test_adjacent_levels_differ_in_fixed_positions(self):
        levels = build_levels(10, D, (0.0, 1.0), 0)
        flips = D // 18
        for i in range(1, 10):
            assert np.count_nonzero(levels.levels[i] != levels.levels[i - 1]) == flips

    def test_same_seed_same_levels(self):
        a = build_levels(10, 1000, (0.0, 1.0), 3)
        b = build_levels(10, 1000, (0.0, 1.0), 3)
        assert np.array_equal(a.levels, b.levels)

    def test_vector_access(self):
        levels = build_levels(4, 64, (-1.0, 1.0), 0)
        assert levels.vector(2).name == "level_2"
        assert levels.n_levels == 4 and levels.dim == 64

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            build_levels(1, D, (0.0, 1.0))
        with pytest.raises(InvalidDimensionError):
            build_levels(10, 1, (0.0, 1.0))
        with pytest.raises(InvalidInputError):
            build_levels(10, D, (1.0, 1.0))

    @pytest.mark.parametrize("dim", [8, 17])
    def test_too_few_dimensions_for_levels(self, dim):
        with pytest.raises(InvalidInputError, match="10 levels need at least 18"):
            build_levels(10, dim, (0.0, 1.0))

    def test_smallest_dimension_still_separates_levels(self):
        levels = build_levels(10, 18, (0.0, 1.0), 0)
        assert len({row.tobytes() for row in levels.levels}) == 10


class TestQuantize:
    def test_bins_and_clamping(self):
        levels = build_levels(10, 100, (0.0, 10.0), 0)
        assert quantize(0.0, levels) == 0
        assert quantize(0.99, levels) == 0
        assert quantize(1.0, levels) == 1
        assert quantize(10.0, levels) == 9
        assert quantize(-3.0, levels) == 0
        assert quantize(42.0, levels) == 9

    def test_bin_index_per_column_ranges(self):
        X = np.array([[0.5, 5.0], [1.0, 10.0]])
        index = bin_index(X, np.array([0.0, 0.0]), np.array([1.0, 10.0]), 4)
        assert index.tolist() == [[2, 2], [3, 3]]


class TestFeatureEncoder:
    def test_deterministic_under_seed(self, blobs):
        a = FeatureEncoder.fit(blobs.X, dim=2000, seed=9).encode_matrix(blobs.X[:5])
        b = FeatureEncoder.fit(blobs.X, dim=2000, seed=9).encode_matrix(blobs.X[:5])
        assert np.array_equal(a, b)

    def test_encodings_are_bipolar(self, blobs):
        encoder = FeatureEncoder.fit(blobs.X, dim=1000, seed=0)
        H = encoder.encode_matrix(blobs.X)
        assert H.shape == (blobs.X.shape[0], 1000)
        assert set(np.unique(H)) == {-1, 1}

    def test_record_matches_matrix_row(self, blobs):
        encoder = FeatureEncoder.fit(blobs.X, dim=1000, seed=0)
        record = encoder.encode_record(blobs.X[3])
        assert np.array_equal(record.values, encoder.encode_matrix(blobs.X)[3])

    def test_feature_subset_omits_terms(self):
        X = np.array([[0.0, 1.0], [1.0, 0.0]])
        encoder = FeatureEncoder.fit(X, dim=500, n_levels=2, seed=0)
        acc = encoder.accumulate(X[:1], features=[0])
        expected = encoder.feature_ids[0] * encoder.level_encoding.levels[0]
        assert np.array_equal(acc[0], expected)

    def test_changing_more_features_lowers_similarity(self, rng):
        X = rng.uniform(0.0, 10.0, size=(50, 20))
        encoder = FeatureEncoder.fit(X, dim=D, seed=1)
        base = X[0].copy()
        changed_counts = list(range(0, 21, 2))
        sims = []
        for count in changed_counts:
            other = base.copy()
            # half the value range moves every changed feature by exactly five bins
            other[:count] = np.where(base[:count] < 5.0, base[:count] + 5.0, base[:count] - 5.0)
            sims.append(cosine_similarity(encoder.encode_record(base), encoder.encode_record(other)))
        rho = stats.spearmanr(changed_counts, sims)[0]
        assert rho < -0.9

    def test_per_feature_ranges_handle_constant_columns(self):
        X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
        encoder = FeatureEncoder.fit(X, dim=200, seed=0, per_feature_ranges=True)
        assert encoder.feature_ranges[1].tolist() == [4.5, 5.5]
        assert encoder.encode_matrix(X).shape == (3, 200)

    def test_rejects_wrong_width_and_non_finite(self, blobs):
        encoder = FeatureEncoder.fit(blobs.X, dim=100, seed=0)
        with pytest.raises(InvalidInputError):
            encoder.encode_matrix(blobs.X[:, :3])
        bad = blobs.X[:2].copy()
        bad[1, 4] = np.nan
        with pytest.raises(InvalidInputError, match="row 1"):
            encoder.encode_matrix(bad)

    def test_empty_subset(self, blobs):
        encoder = FeatureEncoder.fit(blobs.X, dim=100, seed=0)
        with pytest.raises(InvalidInputError):
            encoder.encode_matrix(blobs.X, features=[])

    def test_payload_round_trip(self, blobs):
        encoder = FeatureEncoder.fit(blobs.X, dim=300, seed=2, per_feature_ranges=True)
        meta, arrays = encoder.to_payload()
        restored = FeatureEncoder.from_payload(meta, arrays)
        assert np.array_equal(restored.encode_matrix(blobs.X), encoder.encode_matrix(blobs.X))
