"""Shared fixtures: fixed-seed benchmark datasets."""

import numpy as np
import pytest

from hdlearn.benchmarks import StandardBenchmarks


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def blobs():
    return StandardBenchmarks.gaussian_blobs(seed=0)


@pytest.fixture(scope="session")
def blob_split(blobs):
    return blobs.split(test_size=0.25, seed=0)


@pytest.fixture(scope="session")
def planted():
    return StandardBenchmarks.planted_feature(seed=0)


@pytest.fixture(scope="session")
def three_blobs():
    return StandardBenchmarks.three_blobs(seed=0)


@pytest.fixture(scope="session")
def linear():
    return StandardBenchmarks.linear_regression(seed=0)


@pytest.fixture(scope="session")
def sine():
    return StandardBenchmarks.sine_regression(seed=0)


@pytest.fixture(scope="session")
def graph20():
    return StandardBenchmarks.random_graph(n_nodes=20, density=0.2, seed=0)
