"""
Fixed-seed synthetic benchmark datasets.

Each factory returns the same data for the same seed, so scores reported by
the demos and the test suite are reproducible.
"""

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sklearn.model_selection import train_test_split

from hdlearn.dataset import CLASSIFICATION, REGRESSION, write_table


@dataclass
class BenchmarkDataset:
    """A tabular benchmark: features, targets and how they were made."""
    name: str
    description: str
    category: str  # "classification", "clustering", "regression"
    X: np.ndarray
    y: np.ndarray
    feature_names: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.feature_names:
            self.feature_names = [f"f{i}" for i in range(self.X.shape[1])]

    def split(self, test_size: float = 0.25, seed: int = 0):
        """Seeded train/test split, stratified for class labels."""
        stratify = self.y if self.category != REGRESSION else None
        return train_test_split(self.X, self.y, test_size=test_size, random_state=seed, stratify=stratify)

    def write(self, path: Union[str, Path], labeled: bool = True) -> Path:
        """Export as tab-delimited text in the layout ``load_dataset`` reads."""
        rows = []
        for i, row in enumerate(self.X):
            record = {"sample": f"s{i}"}
            record.update({name: repr(float(v)) for name, v in zip(self.feature_names, row)})
            if labeled:
                record["target"] = self.y[i]
            rows.append(record)
        write_table(path, rows)
        return Path(path)


@dataclass
class BenchmarkGraph:
    """A random weighted graph with its ground-truth adjacency."""
    name: str
    description: str
    edges: List[Tuple[str, str, str]]
    nodes: List[str]
    directed: bool = False

    def adjacency(self) -> Dict[Tuple[str, str], str]:
        """Ordered pair -> weight class, with both directions for undirected graphs."""
        pairs = {}
        for u, v, w in self.edges:
            pairs[(u, v)] = w
            if not self.directed:
                pairs[(v, u)] = w
        return pairs

    def write(self, path: Union[str, Path]) -> Path:
        write_table(path, [{"source": u, "target": v, "weight": w} for u, v, w in self.edges])
        return Path(path)


class StandardBenchmarks:
    """Factory class for the synthetic benchmark datasets."""

    @staticmethod
    def get_all_datasets(seed: int = 0) -> List[BenchmarkDataset]:
        """Get all tabular benchmark datasets."""
        return [
            StandardBenchmarks.gaussian_blobs(seed=seed),
            StandardBenchmarks.planted_feature(seed=seed),
            StandardBenchmarks.three_blobs(seed=seed),
            StandardBenchmarks.linear_regression(seed=seed),
            StandardBenchmarks.sine_regression(seed=seed),
        ]

    @staticmethod
    def get_by_category(category: str, seed: int = 0) -> List[BenchmarkDataset]:
        return [d for d in StandardBenchmarks.get_all_datasets(seed) if d.category == category]

    @staticmethod
    def get_by_name(name: str, seed: int = 0) -> Optional[BenchmarkDataset]:
        for dataset in StandardBenchmarks.get_all_datasets(seed):
            if dataset.name == name:
                return dataset
        return None

    @staticmethod
    def _blobs(centers: Sequence[float], n_per_class: int, n_features: int, sigma: float,
               seed: int) -> Tuple[np.ndarray, np.ndarray]:
        rng = np.random.default_rng(seed)
        X = np.vstack([
            rng.normal(center, sigma, size=(n_per_class, n_features)) for center in centers
        ])
        y = np.repeat(np.arange(len(centers)), n_per_class)
        order = rng.permutation(y.size)
        return X[order], y[order]

    @staticmethod
    def gaussian_blobs(n_per_class: int = 100, n_features: int = 10, separation: float = 4.0,
                       seed: int = 0) -> BenchmarkDataset:
        """Two classes whose centers differ by ``separation`` sigma in every feature."""
        X, y = StandardBenchmarks._blobs((0.0, separation), n_per_class, n_features, 1.0, seed)
        return BenchmarkDataset(
            name="gaussian-blobs",
            description=f"2 Gaussian classes, {separation:g} sigma apart per feature",
            category=CLASSIFICATION,
            X=X,
            y=y,
            metadata={"separation": separation, "seed": seed},
        )

    @staticmethod
    def three_blobs(n_per_class: int = 50, n_features: int = 10, separation: float = 5.0,
                    seed: int = 0) -> BenchmarkDataset:
        """Three well separated Gaussian groups for clustering."""
        centers = (0.0, separation, 2 * separation)
        X, y = StandardBenchmarks._blobs(centers, n_per_class, n_features, 1.0, seed)
        return BenchmarkDataset(
            name="three-blobs",
            description=f"3 Gaussian groups, {separation:g} sigma apart per feature",
            category="clustering",
            X=X,
            y=y,
            metadata={"separation": separation, "seed": seed},
        )

    @staticmethod
    def planted_feature(n_rows: int = 200, n_features: int = 10, seed: int = 0) -> BenchmarkDataset:
        """Only feature 0 carries the label (as -1/+1); the rest is standard normal noise."""
        rng = np.random.default_rng(seed)
        y = np.repeat([0, 1], n_rows // 2)
        rng.shuffle(y)
        X = rng.standard_normal((y.size, n_features))
        X[:, 0] = 2.0 * y - 1.0
        return BenchmarkDataset(
            name="planted-feature",
            description="Single informative feature among noise",
            category=CLASSIFICATION,
            X=X,
            y=y,
            metadata={"informative": [0], "seed": seed},
        )

    @staticmethod
    def linear_regression(n_rows: int = 500, slope: float = 2.0, seed: int = 0) -> BenchmarkDataset:
        rng = np.random.default_rng(seed)
        X = rng.uniform(-1.0, 1.0, size=(n_rows, 1))
        return BenchmarkDataset(
            name="linear",
            description=f"y = {slope:g} * x on [-1, 1]",
            category=REGRESSION,
            X=X,
            y=slope * X[:, 0],
            feature_names=["x"],
            metadata={"slope": slope, "seed": seed},
        )

    @staticmethod
    def sine_regression(n_rows: int = 1000, frequency: float = 3.0, seed: int = 0) -> BenchmarkDataset:
        rng = np.random.default_rng(seed)
        X = rng.uniform(-1.0, 1.0, size=(n_rows, 1))
        return BenchmarkDataset(
            name="sine",
            description=f"y = sin({frequency:g} * x) on [-1, 1]",
            category=REGRESSION,
            X=X,
            y=np.sin(frequency * X[:, 0]),
            feature_names=["x"],
            metadata={"frequency": frequency, "seed": seed},
        )

    @staticmethod
    def random_graph(n_nodes: int = 20, density: float = 0.2, weight_classes: int = 1,
                     directed: bool = False, seed: int = 0) -> BenchmarkGraph:
        """Erdos-Renyi style graph; each edge gets a uniformly drawn weight class."""
        rng = np.random.default_rng(seed)
        nodes = [f"n{i}" for i in range(n_nodes)]
        pairs = itertools.permutations(range(n_nodes), 2) if directed else itertools.combinations(range(n_nodes), 2)
        edges = []
        for u, v in pairs:
            if rng.random() < density:
                weight = str(int(rng.integers(weight_classes)) + 1)
                edges.append((nodes[u], nodes[v], weight))
        return BenchmarkGraph(
            name=f"random-graph-{n_nodes}",
            description=f"{n_nodes} nodes, density {density:g}, {weight_classes} weight class(es)",
            edges=edges,
            nodes=nodes,
            directed=directed,
        )
